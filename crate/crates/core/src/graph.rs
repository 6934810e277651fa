//! Host graphs: immutable simple undirected graphs with sorted adjacency
//! lists and a hashed edge test.

use std::collections::HashSet;
use std::io::BufRead;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;
use thiserror::Error;

/// Dense 0-based node identifier.
pub type NodeId = u32;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: node {node} out of range for n = {n}")]
    NodeOutOfRange { line: usize, node: u64, n: usize },
    #[error("line {line}: self-loop on node {node}")]
    SelfLoop { line: usize, node: NodeId },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: NodeId, v: NodeId },
    #[error("{m} edges requested but a simple graph on {n} nodes has at most {max}")]
    TooManyEdges { n: usize, m: usize, max: usize },
    #[error("common neighbour count of an empty node set is undefined")]
    EmptyNodeSet,
    #[error("node {node} out of range for n = {n}")]
    InvalidNode { node: NodeId, n: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[inline]
fn pair_key(u: NodeId, v: NodeId) -> u64 {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    (u64::from(a) << 32) | u64::from(b)
}

/// A sorted, duplicate-free set of node ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSet(Vec<NodeId>);

impl NodeSet {
    pub fn new(nodes: impl IntoIterator<Item = NodeId>) -> Self {
        let mut v: Vec<NodeId> = nodes.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        NodeSet(v)
    }

    pub fn as_slice(&self) -> &[NodeId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<NodeId>> for NodeSet {
    fn from(v: Vec<NodeId>) -> Self {
        NodeSet::new(v)
    }
}

/// Immutable simple undirected graph.
///
/// Edges keep their insertion order, which defines the row order of
/// edge-orbit output.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(NodeId, NodeId)>,
    offsets: Vec<usize>,
    // CSR adjacency; `adj_edge[i]` is the edge index of `adj[i]`
    adj: Vec<NodeId>,
    adj_edge: Vec<u32>,
    edge_index: FxHashMap<u64, u32>,
}

impl Graph {
    /// Builds a graph from an edge list. Errors report `line = index + 2`,
    /// the line the edge would occupy in the text format.
    pub fn from_edges(n: usize, edges: &[(NodeId, NodeId)]) -> Result<Graph, GraphError> {
        let mut edge_index = FxHashMap::default();
        edge_index.reserve(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            let line = i + 2;
            for node in [u, v] {
                if node as usize >= n {
                    return Err(GraphError::NodeOutOfRange { line, node: node.into(), n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { line, node: u });
            }
            if edge_index.insert(pair_key(u, v), i as u32).is_some() {
                return Err(GraphError::DuplicateEdge { line, u, v });
            }
        }

        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut pairs: Vec<(NodeId, u32)> = vec![(0, 0); 2 * edges.len()];
        let mut fill = offsets[..n].to_vec();
        for (i, &(u, v)) in edges.iter().enumerate() {
            pairs[fill[u as usize]] = (v, i as u32);
            fill[u as usize] += 1;
            pairs[fill[v as usize]] = (u, i as u32);
            fill[v as usize] += 1;
        }
        for v in 0..n {
            pairs[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        let (adj, adj_edge) = pairs.into_iter().unzip();

        Ok(Graph { n, edges: edges.to_vec(), offsets, adj, adj_edge, edge_index })
    }

    /// Reads the `n e` header followed by `e` lines of `u v`.
    pub fn load(reader: impl BufRead) -> Result<Graph, GraphError> {
        let mut lines = reader.lines();
        let header = match lines.next() {
            Some(line) => line?,
            None => return Err(GraphError::Malformed { line: 1, reason: "missing header".into() }),
        };
        let (n, e) = parse_pair(&header, 1)?;
        let n = n as usize;
        let e = e as usize;

        let mut edges = Vec::with_capacity(e);
        let mut line_no = 1;
        for line in lines {
            let line = line?;
            line_no += 1;
            let trimmed = line.trim_end_matches('\r');
            if edges.len() == e {
                if trimmed.trim().is_empty() {
                    continue;
                }
                return Err(GraphError::Malformed {
                    line: line_no,
                    reason: format!("more than the {e} declared edges"),
                });
            }
            let (u, v) = parse_pair(trimmed, line_no)?;
            for node in [u, v] {
                if node as usize >= n {
                    return Err(GraphError::NodeOutOfRange { line: line_no, node, n });
                }
            }
            edges.push((u as NodeId, v as NodeId));
        }
        if edges.len() != e {
            return Err(GraphError::Malformed {
                line: line_no + 1,
                reason: format!("expected {e} edges, found {}", edges.len()),
            });
        }
        Graph::from_edges(n, &edges)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in insertion order.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adj[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    /// Edge indices parallel to [`Graph::neighbors`].
    #[inline]
    pub fn incident_edges(&self, v: NodeId) -> &[u32] {
        &self.adj_edge[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    /// Start of `v`'s slice in the CSR arrays; directed edge `v -> neighbors(v)[i]`
    /// has the global slot `adjacency_offset(v) + i`.
    #[inline]
    pub fn adjacency_offset(&self, v: NodeId) -> usize {
        self.offsets[v as usize]
    }

    #[inline]
    pub fn degree(&self, v: NodeId) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n as NodeId).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    #[inline]
    pub fn adjacent(&self, u: NodeId, v: NodeId) -> bool {
        u != v && self.edge_index.contains_key(&pair_key(u, v))
    }

    #[inline]
    pub fn edge_id(&self, u: NodeId, v: NodeId) -> Option<usize> {
        self.edge_index.get(&pair_key(u, v)).map(|&i| i as usize)
    }

    /// `|N(s)|`, the number of nodes adjacent to every member of `s`.
    pub fn common_neighbor_count(&self, s: &NodeSet) -> Result<usize, GraphError> {
        let nodes = s.as_slice();
        let Some((&first, rest)) = nodes.split_first() else {
            return Err(GraphError::EmptyNodeSet);
        };
        for &v in nodes {
            if v as usize >= self.n {
                return Err(GraphError::InvalidNode { node: v, n: self.n });
            }
        }
        let mut common: Vec<NodeId> = self.neighbors(first).to_vec();
        for &v in rest {
            common = intersect_sorted(&common, self.neighbors(v));
            if common.is_empty() {
                break;
            }
        }
        Ok(common.len())
    }
}

impl FromStr for Graph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Graph::load(s.as_bytes())
    }
}

fn parse_pair(line: &str, line_no: usize) -> Result<(u64, u64), GraphError> {
    let mut it = line.trim_end_matches('\r').split(' ');
    let mut next = || -> Result<u64, GraphError> {
        let tok = it.next().filter(|t| !t.is_empty()).ok_or_else(|| GraphError::Malformed {
            line: line_no,
            reason: "expected two integers separated by a single space".into(),
        })?;
        tok.parse::<u64>().map_err(|_| GraphError::Malformed {
            line: line_no,
            reason: format!("invalid integer {tok:?}"),
        })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(GraphError::Malformed { line: line_no, reason: "trailing tokens".into() });
    }
    Ok((a, b))
}

pub(crate) fn intersect_sorted(a: &[NodeId], b: &[NodeId]) -> Vec<NodeId> {
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Uniform G(n, m): exactly `m` distinct edges, deterministic for a seed.
pub fn generate_er_graph(n: usize, m: usize, seed: u64) -> Result<Graph, GraphError> {
    let max = n * n.saturating_sub(1) / 2;
    if m > max {
        return Err(GraphError::TooManyEdges { n, m, max });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| -> (NodeId, NodeId) {
        loop {
            let u = rng.random_range(0..n) as NodeId;
            let v = rng.random_range(0..n) as NodeId;
            if u != v {
                return if u < v { (u, v) } else { (v, u) };
            }
        }
    };

    let edges: Vec<(NodeId, NodeId)> = if 2 * m <= max {
        let mut seen = HashSet::with_capacity(m);
        let mut edges = Vec::with_capacity(m);
        while edges.len() < m {
            let e = draw(&mut rng);
            if seen.insert(e) {
                edges.push(e);
            }
        }
        edges
    } else {
        // dense: sample the complement instead
        let mut missing = HashSet::with_capacity(max - m);
        while missing.len() < max - m {
            missing.insert(draw(&mut rng));
        }
        let mut edges = Vec::with_capacity(m);
        for u in 0..n as NodeId {
            for v in u + 1..n as NodeId {
                if !missing.contains(&(u, v)) {
                    edges.push((u, v));
                }
            }
        }
        edges
    };
    Graph::from_edges(n, &edges)
}

/// Erdős–Rényi G(n, p) with independent edges.
pub fn generate_gnp_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n as NodeId {
        for v in u + 1..n as NodeId {
            if rng.random_bool(p.clamp(0.0, 1.0)) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("generated edges are simple")
}

/// Deterministic graph families.
pub mod families {
    use super::{Graph, NodeId};

    fn build(n: usize, edges: Vec<(NodeId, NodeId)>) -> Graph {
        Graph::from_edges(n, &edges).expect("family edges are simple")
    }

    pub fn path(n: usize) -> Graph {
        build(n, (1..n as NodeId).map(|v| (v - 1, v)).collect())
    }

    /// Cycle on `n >= 3` nodes.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycles need three nodes");
        let mut edges: Vec<_> = (1..n as NodeId).map(|v| (v - 1, v)).collect();
        edges.push((n as NodeId - 1, 0));
        build(n, edges)
    }

    /// Node 0 joined to `leaves` others.
    pub fn star(leaves: usize) -> Graph {
        build(leaves + 1, (1..=leaves as NodeId).map(|v| (0, v)).collect())
    }

    pub fn complete(n: usize) -> Graph {
        let n32 = n as NodeId;
        build(n, (0..n32).flat_map(|a| (a + 1..n32).map(move |b| (a, b))).collect())
    }

    /// Parts `0..a` and `a..a + b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let (a32, b32) = (a as NodeId, b as NodeId);
        build(a + b, (0..a32).flat_map(|u| (a32..a32 + b32).map(move |v| (u, v))).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        "3 3\n0 1\n0 2\n1 2".parse().unwrap()
    }

    fn c4() -> Graph {
        "4 4\n0 1\n1 2\n2 3\n3 0".parse().unwrap()
    }

    #[test]
    fn loads_triangle_and_c4() {
        let t = triangle();
        assert_eq!((t.node_count(), t.edge_count()), (3, 3));
        assert!(t.adjacent(0, 1) && t.adjacent(1, 2) && t.adjacent(0, 2));

        let c = c4();
        assert_eq!(c.edges(), &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(c.neighbors(0), &[1, 3]);
        assert!(!c.adjacent(0, 2));
    }

    #[test]
    fn accepts_crlf() {
        let g: Graph = "3 2\r\n0 1\r\n1 2\r\n".parse().unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn reports_self_loop_with_line() {
        let err = "2 1\n0 0".parse::<Graph>().unwrap_err();
        assert!(matches!(err, GraphError::SelfLoop { line: 2, node: 0 }), "{err}");
    }

    #[test]
    fn reports_other_input_errors() {
        assert!(matches!(
            "3 2\n0 1\n1 0".parse::<Graph>().unwrap_err(),
            GraphError::DuplicateEdge { line: 3, .. }
        ));
        assert!(matches!(
            "3 1\n0 3".parse::<Graph>().unwrap_err(),
            GraphError::NodeOutOfRange { line: 2, node: 3, n: 3 }
        ));
        assert!(matches!(
            "3 1\n0  1".parse::<Graph>().unwrap_err(),
            GraphError::Malformed { line: 2, .. }
        ));
        assert!(matches!(
            "3 2\n0 1".parse::<Graph>().unwrap_err(),
            GraphError::Malformed { line: 3, .. }
        ));
        assert!(matches!("".parse::<Graph>().unwrap_err(), GraphError::Malformed { line: 1, .. }));
    }

    #[test]
    fn adjacency_queries() {
        assert!(triangle().adjacent(0, 1));
        assert!(!c4().adjacent(0, 2));
        for v in 0..4 {
            assert!(!c4().adjacent(v, v));
        }
    }

    #[test]
    fn common_neighbor_examples() {
        let t = triangle();
        assert_eq!(t.common_neighbor_count(&NodeSet::new([0, 1])).unwrap(), 1);
        let c = c4();
        assert_eq!(c.common_neighbor_count(&NodeSet::new([0, 2])).unwrap(), 2);
        assert_eq!(c.common_neighbor_count(&NodeSet::new([0, 1, 2])).unwrap(), 0);
        assert!(matches!(
            c.common_neighbor_count(&NodeSet::new([])),
            Err(GraphError::EmptyNodeSet)
        ));
    }

    #[test]
    fn er_examples() {
        let k4 = generate_er_graph(4, 6, 7).unwrap();
        assert_eq!(k4.edge_count(), 6);
        for u in 0..4 {
            assert_eq!(k4.degree(u), 3);
        }
        assert_eq!(generate_er_graph(10, 0, 1).unwrap().edge_count(), 0);
        let a = generate_er_graph(1000, 50_000, 11).unwrap();
        let b = generate_er_graph(1000, 50_000, 11).unwrap();
        assert_eq!(a.edges(), b.edges());
        assert!(matches!(generate_er_graph(4, 7, 0), Err(GraphError::TooManyEdges { .. })));
    }

    #[test]
    fn isolated_nodes_allowed() {
        let g: Graph = "5 1\n0 1\n".parse().unwrap();
        assert_eq!(g.degree(4), 0);
        assert!(g.neighbors(4).is_empty());
    }
}
