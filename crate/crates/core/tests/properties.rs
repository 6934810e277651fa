use graphlet_orbits::atlas::Atlas;
use graphlet_orbits::engine::{count_orbits, EngineConfig, OrbitCounter};
use graphlet_orbits::equations::Mode;
use graphlet_orbits::graph::{generate_er_graph, Graph, NodeId, NodeSet};
use graphlet_orbits::oracle::brute_force_orbits;
use proptest::prelude::*;

fn host() -> impl Strategy<Value = Graph> {
    (1usize..=14, 0.0f64..=1.0, any::<u64>()).prop_map(|(n, fill, seed)| {
        let m = (fill * (n * (n - 1) / 2) as f64).round() as usize;
        generate_er_graph(n, m, seed).unwrap()
    })
}

fn connected(g: &Graph, nodes: &[NodeId]) -> bool {
    let mut seen = 1u32;
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..nodes.len() {
            if seen >> j & 1 == 0 && g.adjacent(nodes[i], nodes[j]) {
                seen |= 1 << j;
                stack.push(j);
            }
        }
    }
    seen.count_ones() as usize == nodes.len()
}

/// Connected induced `k`-sets containing each node.
fn sets_per_node(g: &Graph, k: usize) -> Vec<u64> {
    fn walk(g: &Graph, k: usize, from: NodeId, cur: &mut Vec<NodeId>, out: &mut Vec<u64>) {
        if cur.len() == k {
            if connected(g, cur) {
                cur.iter().for_each(|&v| out[v as usize] += 1);
            }
            return;
        }
        for v in from..g.node_count() as NodeId {
            cur.push(v);
            walk(g, k, v + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![0; g.node_count()];
    walk(g, k, 0, &mut Vec::new(), &mut out);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn relabelling_permutes_rows(g in host(), shuffle in any::<u64>()) {
        let n = g.node_count();
        let mut perm: Vec<NodeId> = (0..n as NodeId).collect();
        let mut s = shuffle;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let edges: Vec<_> = g.edges().iter().map(|&(u, v)| (perm[u as usize], perm[v as usize])).collect();
        let h = Graph::from_edges(n, &edges).unwrap();
        for k in [4, 5] {
            let a = count_orbits(&g, k, Mode::Node).unwrap();
            let b = count_orbits(&h, k, Mode::Node).unwrap();
            for v in 0..n {
                prop_assert_eq!(a.row(v), b.row(perm[v] as usize));
            }
            // edge rows follow input order, which relabelling keeps
            let a = count_orbits(&g, k, Mode::Edge).unwrap();
            let b = count_orbits(&h, k, Mode::Edge).unwrap();
            prop_assert_eq!(a.as_slice(), b.as_slice());
        }
    }

    #[test]
    fn orbit_sums_match_graphlet_totals(g in host()) {
        let atlas = Atlas::build(5).unwrap();
        for mode in [Mode::Node, Mode::Edge] {
            let m = count_orbits(&g, 5, mode).unwrap();
            let totals = brute_force_orbits(&g, 5, mode).unwrap().graphlet_totals;
            for f in atlas.graphlets().iter().filter(|f| f.node_count() >= 4) {
                let orbits: Vec<(usize, usize)> = match mode {
                    Mode::Node => f.node_orbits.iter().map(|&o| (o, atlas.orbit(o).size)).collect(),
                    Mode::Edge => f.edge_orbits.iter().map(|&o| (o, atlas.edge_orbit(o).size)).collect(),
                };
                for (o, size) in orbits {
                    let sum: u64 = (0..m.rows()).map(|r| m.get_internal(r, o).unwrap()).sum();
                    prop_assert_eq!(sum, totals[f.id] * size as u64);
                }
            }
        }
    }

    #[test]
    fn row_sums_count_connected_sets(g in host()) {
        let m = count_orbits(&g, 5, Mode::Node).unwrap();
        let atlas = Atlas::build(5).unwrap();
        for k in [4, 5] {
            let direct = sets_per_node(&g, k);
            for (v, &d) in direct.iter().enumerate() {
                let sum: u64 = atlas.orbit_range(k).map(|o| m.get_internal(v, o).unwrap()).sum();
                prop_assert_eq!(sum, d);
            }
        }
    }

    #[test]
    fn common_neighbours_shrink_as_sets_grow(g in host(), picks in proptest::collection::vec(any::<u32>(), 1..5)) {
        let n = g.node_count() as u32;
        let mut nodes = Vec::new();
        let mut last = usize::MAX;
        for p in picks {
            nodes.push(p % n);
            let c = g.common_neighbor_count(&NodeSet::new(nodes.clone())).unwrap();
            prop_assert!(c <= last);
            last = c;
        }
        if let [v] = nodes[..1] {
            prop_assert_eq!(g.common_neighbor_count(&NodeSet::new([v])).unwrap(), g.degree(v));
        }
    }

    #[test]
    fn generated_graphs_are_valid(n in 0usize..60, fill in 0.0f64..=1.0, seed in any::<u64>()) {
        let max = n * n.saturating_sub(1) / 2;
        let m = (fill * max as f64) as usize;
        let g = generate_er_graph(n, m, seed).unwrap();
        prop_assert_eq!(g.edge_count(), m);
        let degrees: usize = (0..n as NodeId).map(|v| g.degree(v)).sum();
        prop_assert_eq!(degrees, 2 * m);
        for &(u, v) in g.edges() {
            prop_assert!(u != v && g.adjacent(u, v) && g.adjacent(v, u));
            prop_assert!(g.neighbors(u).contains(&v) && g.neighbors(v).contains(&u));
        }
        for v in 0..n as NodeId {
            prop_assert!(g.neighbors(v).windows(2).all(|w| w[0] < w[1]));
        }
        let text = format!("{n} {m}\n{}", g.edges().iter().map(|(u, v)| format!("{u} {v}\n")).collect::<String>());
        let back: Graph = text.parse().unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        let again = generate_er_graph(n, m, seed).unwrap();
        prop_assert_eq!(again.edges(), g.edges());
        if m < max {
            prop_assert!(generate_er_graph(n, max + 1, seed).is_err());
        }
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let g = generate_er_graph(400, 4000, 5).unwrap();
    for k in [4, 5] {
        for mode in [Mode::Node, Mode::Edge] {
            let c = OrbitCounter::new(k, mode).unwrap();
            let runs: Vec<_> = [1, 2, 8]
                .iter()
                .map(|&threads| c.count(&g, &EngineConfig { threads, ..Default::default() }).unwrap())
                .collect();
            for r in &runs[1..] {
                assert_eq!(r.matrix.as_slice(), runs[0].matrix.as_slice(), "k = {k}, {mode}");
                assert_eq!(r.counters.subgraphs, runs[0].counters.subgraphs);
            }
        }
    }
}
