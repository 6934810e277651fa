//! Brute-force orbit counts: classify every node subset of size `2..=k`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::atlas::{Atlas, AtlasError, Numbering};
use crate::equations::Mode;
use crate::graph::{families, generate_er_graph, Graph, NodeId};
use crate::matrix::OrbitCountMatrix;

/// Default largest host the oracle accepts.
pub const DEFAULT_MAX_NODES: usize = 40;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle refuses hosts with {n} nodes (limit {max})")]
    TooLarge { n: usize, max: usize },
    #[error(transparent)]
    Atlas(#[from] AtlasError),
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub matrix: OrbitCountMatrix,
    /// Induced occurrences of each graphlet, indexed by internal graphlet id.
    pub graphlet_totals: Vec<u64>,
}

/// Counts orbits by exhaustive subset enumeration, for hosts with at most
/// [`DEFAULT_MAX_NODES`] nodes.
pub fn brute_force_orbits(g: &Graph, k: usize, mode: Mode) -> Result<OracleResult, OracleError> {
    brute_force_orbits_with(g, k, mode, Numbering::Przulj, DEFAULT_MAX_NODES)
}

pub fn brute_force_orbits_with(
    g: &Graph,
    k: usize,
    mode: Mode,
    numbering: Numbering,
    max_nodes: usize,
) -> Result<OracleResult, OracleError> {
    let n = g.node_count();
    if n > max_nodes {
        return Err(OracleError::TooLarge { n, max: max_nodes });
    }
    let atlas = Atlas::build(k)?;
    let cols = OrbitCountMatrix::internal_columns(&atlas, mode, k);
    let rows = match mode {
        Mode::Node => n,
        Mode::Edge => g.edge_count(),
    };
    let mut walk = Walk {
        g,
        atlas: &atlas,
        k,
        mode,
        cols,
        data: vec![0; rows * cols],
        totals: vec![0; atlas.graphlets().len()],
        nodes: Vec::with_capacity(k),
    };
    walk.subsets(0, 0);
    let matrix = OrbitCountMatrix::from_internal(&atlas, mode, k, numbering, walk.data);
    Ok(OracleResult { matrix, graphlet_totals: walk.totals })
}

/// Paths, cycles, stars, complete and complete bipartite graphs on at most
/// 12 nodes, with names.
pub fn structured_corpus() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 1..=12 {
        out.push((format!("P{n}"), families::path(n)));
        out.push((format!("K{n}"), families::complete(n)));
    }
    for n in 3..=12 {
        out.push((format!("C{n}"), families::cycle(n)));
    }
    for leaves in 1..=11 {
        out.push((format!("S{leaves}"), families::star(leaves)));
    }
    for a in 1..=6 {
        for b in a..=12 - a {
            out.push((format!("K{a},{b}"), families::complete_bipartite(a, b)));
        }
    }
    out
}

/// `count` hosts `G(n, m)` with `n` in `5..=25` and `m` covering edge
/// densities from 0.1 to 0.5, reproducible from `seed`.
pub fn random_corpus(count: usize, seed: u64) -> Vec<(String, Graph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.random_range(5..=25usize);
            let p = 0.1 + 0.4 * i as f64 / count.saturating_sub(1).max(1) as f64;
            let m = (p * (n * (n - 1) / 2) as f64).round() as usize;
            let host_seed = rng.random();
            let g = generate_er_graph(n, m, host_seed).expect("m is below the pair count");
            (format!("G({n}, {m}) seed {host_seed}"), g)
        })
        .collect()
}

struct Walk<'a> {
    g: &'a Graph,
    atlas: &'a Atlas,
    k: usize,
    mode: Mode,
    cols: usize,
    data: Vec<u64>,
    totals: Vec<u64>,
    nodes: Vec<NodeId>,
}

impl Walk<'_> {
    /// Visits every subset extending `nodes` with ids from `from` upwards;
    /// `code` is the adjacency code of `nodes` in order.
    fn subsets(&mut self, from: NodeId, code: u64) {
        let len = self.nodes.len();
        if len >= 2 {
            self.tally(code);
        }
        if len == self.k {
            return;
        }
        for v in from..self.g.node_count() as NodeId {
            let bits = self.nodes.iter().fold(0u64, |b, &u| b << 1 | u64::from(self.g.adjacent(u, v)));
            self.nodes.push(v);
            self.subsets(v + 1, code << len | bits);
            self.nodes.pop();
        }
    }

    fn tally(&mut self, code: u64) {
        let s = self.nodes.len();
        let Some(class) = self.atlas.classify_code(s, code) else {
            return;
        };
        let gl = self.atlas.graphlet(class.graphlet as usize);
        self.totals[gl.id] += 1;
        match self.mode {
            Mode::Node => {
                for (i, &v) in self.nodes.iter().enumerate() {
                    let orbit = gl.node_orbits[class.canonical[i] as usize];
                    self.data[v as usize * self.cols + orbit] += 1;
                }
            }
            Mode::Edge => {
                for i in 0..s {
                    for j in i + 1..s {
                        let (a, b) = (self.nodes[i], self.nodes[j]);
                        if let Some(e) = self.g.edge_id(a, b) {
                            let orbit = gl.edge_orbit(class.canonical[i], class.canonical[j]).expect("edge");
                            self.data[e * self.cols + orbit] += 1;
                        }
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::complete;

    #[test]
    fn c4() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let r = brute_force_orbits(&g, 4, Mode::Node).unwrap();
        for v in 0..4 {
            assert_eq!(r.matrix.row(v), &[2, 2, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0]);
        }
    }

    #[test]
    fn k5_four_cliques() {
        let r = brute_force_orbits(&complete(5), 4, Mode::Node).unwrap();
        for v in 0..5 {
            assert_eq!(r.matrix.get(v, 14), Some(4));
        }
    }

    #[test]
    fn p5_center() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let r = brute_force_orbits(&g, 5, Mode::Node).unwrap();
        assert_eq!(r.matrix.get(2, 17), Some(1));
        assert_eq!(r.matrix.get(0, 15), Some(1));
        assert_eq!(r.matrix.get(1, 16), Some(1));
    }

    #[test]
    fn totals_and_edges() {
        let g = complete(5);
        let r = brute_force_orbits(&g, 5, Mode::Edge).unwrap();
        assert_eq!(r.graphlet_totals.iter().sum::<u64>(), 10 + 10 + 5 + 1);
        // every edge lies in one K5, three K4 and three triangles
        let row = r.matrix.row(0);
        assert_eq!(row.iter().sum::<u64>(), 1 + 3 + 3 + 1);
    }

    #[test]
    fn corpus_sizes() {
        let corpus = structured_corpus();
        assert!(corpus.iter().all(|(_, g)| g.node_count() <= 12));
        let c5 = &corpus.iter().find(|(name, _)| name == "C5").unwrap().1;
        assert_eq!(c5.edge_count(), 5);
    }

    #[test]
    fn refuses_large_hosts() {
        let g = Graph::from_edges(50, &[]).unwrap();
        assert_eq!(
            brute_force_orbits(&g, 4, Mode::Node).unwrap_err(),
            OracleError::TooLarge { n: 50, max: DEFAULT_MAX_NODES }
        );
    }
}
