//! Right-hand sides compiled to lookups keyed by raw adjacency code.
//!
//! The host enumerator lists each connected set around a row once, as an
//! ordered tuple whose first one (node mode) or two (edge mode) entries are
//! the row's own nodes. The tuple's adjacency code selects the terms it
//! contributes to.

use super::EngineError;
use crate::equations::{Anchor, EquationSystem, Mode};
use crate::small::{mask_nodes, pair_count, SmallGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum TermKind {
    /// Read `c(S)` from the common-neighbour table.
    Table,
    /// A non-adjacent pair through a row node, counted around that node.
    Dist2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Term {
    pub eq: u16,
    /// Tuple positions forming the set `S`.
    pub positions: u8,
    pub correction: u32,
    pub kind: TermKind,
}

#[derive(Debug, Clone)]
pub(crate) struct Compiled {
    /// Tuple length, `k - 1`.
    pub size: usize,
    pub by_code: Vec<Vec<Term>>,
    pub has_dist2: bool,
}

/// Compiles `system` for a table built with `table_k`.
pub(crate) fn compile(system: &EquationSystem, table_k: usize) -> Result<Compiled, EngineError> {
    let atlas = &system.atlas;
    let size = system.k - 1;
    let anchor = match system.mode {
        Mode::Node => Anchor::Node(0),
        Mode::Edge => Anchor::Edge(0, 1),
    };
    let mut by_code = vec![Vec::new(); 1 << pair_count(size)];
    let mut has_dist2 = false;
    for (code, terms) in by_code.iter_mut().enumerate() {
        let g = SmallGraph::from_code(size, code as u64);
        if system.mode == Mode::Edge && !g.has_edge(0, 1) {
            continue;
        }
        let Some((graphlet, canon)) = atlas.lookup(&g) else {
            continue;
        };
        let gl = atlas.graphlet(graphlet);
        let orbit = match system.mode {
            Mode::Node => gl.node_orbits[canon[0] as usize],
            Mode::Edge => gl.edge_orbit(canon[0], canon[1]).expect("anchor is an edge"),
        };
        for (i, eq) in system.equations.iter().enumerate() {
            let rhs = &eq.rhs;
            if rhs.reduced != graphlet || rhs.anchor_orbit != orbit {
                continue;
            }
            let red = &atlas.graphlet(rhs.reduced).graph;
            let psi = g
                .find_isomorphism(red, &|v, w| anchor.contains(v) == rhs.anchor.contains(w))
                .expect("same graphlet and anchor orbit");
            for e in &rhs.family.sets {
                let positions = (0..size as u8).filter(|&v| e.nodes >> psi[v as usize] & 1 == 1).fold(0u8, |m, v| m | 1 << v);
                let len = positions.count_ones() as usize;
                let kind = if len + 3 <= table_k || (len + 2 == table_k && g.is_connected_subset(positions)) {
                    TermKind::Table
                } else if len == 2 && table_k == 4 && positions & anchor.mask() != 0 {
                    has_dist2 = true;
                    TermKind::Dist2
                } else {
                    return Err(EngineError::UnsupportedTerm {
                        orbit: eq.target,
                        nodes: mask_nodes(positions).collect(),
                    });
                };
                terms.push(Term { eq: i as u16, positions, correction: e.correction, kind });
            }
        }
    }
    Ok(Compiled { size, by_code, has_dist2 })
}
