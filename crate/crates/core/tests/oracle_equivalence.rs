use graphlet_orbits::engine::{EngineConfig, OrbitCounter};
use graphlet_orbits::equations::Mode;
use graphlet_orbits::graph::Graph;
use graphlet_orbits::oracle::{brute_force_orbits, random_corpus, structured_corpus};

fn counters() -> Vec<OrbitCounter> {
    let mut out = Vec::new();
    for k in [4, 5] {
        for mode in [Mode::Node, Mode::Edge] {
            out.push(OrbitCounter::new(k, mode).unwrap());
        }
    }
    out
}

fn check(hosts: &[(String, Graph)]) {
    for c in counters() {
        for (name, g) in hosts {
            let engine = c.count(g, &EngineConfig { threads: 1, ..Default::default() }).unwrap().matrix;
            let oracle = brute_force_orbits(g, c.k(), c.mode()).unwrap().matrix;
            assert_eq!(engine.first_difference(&oracle), None, "{name}, k = {}, {} mode", c.k(), c.mode());
        }
    }
}

#[test]
fn random_hosts() {
    check(&random_corpus(30, 11));
}

#[test]
fn structured_hosts() {
    check(&structured_corpus());
}

#[test]
fn hosts_with_isolated_nodes() {
    let g = Graph::from_edges(9, &[(0, 1), (1, 2), (2, 0), (2, 3), (5, 6)]).unwrap();
    check(&[("triangle with tail and spare nodes".into(), g)]);
}
