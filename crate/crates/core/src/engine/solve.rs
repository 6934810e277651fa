//! Back substitution in exact integer arithmetic.

use super::EngineError;
use crate::equations::{EquationSystem, Mode};

/// Orbit ids covered by `system`, as a range.
pub(crate) fn orbit_range(system: &EquationSystem) -> std::ops::Range<usize> {
    match system.mode {
        Mode::Node => system.atlas.orbit_range(system.k),
        Mode::Edge => system.atlas.edge_orbit_range(system.k),
    }
}

/// Solves one row. `out[o - range.start]` receives the count of orbit `o`.
///
/// Every non-target orbit of an equation lives on a graphlet with more edges
/// and so has a larger id; walking targets downwards from the clique sees
/// each of them already solved.
pub fn solve_row(system: &EquationSystem, rhs: &[i64], clique: u64, row: usize, out: &mut [u64]) -> Result<(), EngineError> {
    let start = orbit_range(system).start;
    out.iter_mut().for_each(|v| *v = 0);
    out[system.clique_orbit - start] = clique;
    for (eq, &b) in system.equations.iter().zip(rhs).rev() {
        let mut acc = b as i128;
        for (&o, &c) in &eq.lhs {
            if o != eq.target {
                debug_assert!(o > eq.target);
                acc -= c as i128 * out[o - start] as i128;
            }
        }
        let c = eq.target_coefficient() as i128;
        if acc % c != 0 {
            return Err(EngineError::InexactDivision { row, orbit: eq.target, numerator: acc, divisor: c as u64 });
        }
        let v = acc / c;
        if v < 0 {
            return Err(EngineError::NegativeCount { row, orbit: eq.target, value: v });
        }
        out[eq.target - start] = u64::try_from(v).map_err(|_| EngineError::Overflow { row })?;
    }
    Ok(())
}
