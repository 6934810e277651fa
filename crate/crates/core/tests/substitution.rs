//! Every generated equation holds when the brute-force orbit counts are
//! substituted into its left-hand side.

use graphlet_orbits::atlas::Numbering;
use graphlet_orbits::engine::OrbitCounter;
use graphlet_orbits::equations::Mode;
use graphlet_orbits::graph::generate_er_graph;
use graphlet_orbits::oracle::brute_force_orbits_with;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn oracle_lhs_equals_engine_rhs() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let counters: Vec<_> = [Mode::Node, Mode::Edge].map(|m| OrbitCounter::new(5, m).unwrap()).into();
    for host in 0..50 {
        let n = rng.random_range(5..=20usize);
        let m = rng.random_range(0..=n * (n - 1) / 2);
        let g = generate_er_graph(n, m, rng.random()).unwrap();
        for c in &counters {
            let oracle = brute_force_orbits_with(&g, 5, c.mode(), Numbering::Internal, 40).unwrap().matrix;
            let rhs = c.right_hand_sides(&g).unwrap();
            for (row, per_system) in rhs.iter().enumerate() {
                for (system, values) in c.systems().iter().zip(per_system) {
                    for (eq, &value) in system.equations.iter().zip(values) {
                        let lhs: u64 =
                            eq.lhs.iter().map(|(&o, &coef)| coef * oracle.get_internal(row, o).unwrap()).sum();
                        assert_eq!(
                            lhs as i64, value,
                            "host {host} G({n}, {m}), {} row {row}, orbit {}",
                            c.mode(), eq.target
                        );
                    }
                }
            }
        }
    }
}
