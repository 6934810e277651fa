//! Catalogue of connected graphlets on `2..=k` nodes with node and edge
//! orbits, a deterministic internal numbering and the published numbering
//! for graphlets up to five nodes.
//!
//! Graphlets are sorted by node count, then edge count, then canonical
//! code. Orbit ids are global and follow graphlet order; inside a graphlet
//! they are ordered by the smallest canonical node (resp. edge) they hold.

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{Graph, NodeSet};
use crate::przulj;
use crate::small::{mask_nodes, pair_count, SmallGraph, MAX_NODES};

/// Largest graphlet size the atlas accepts.
pub const MAX_GRAPHLET_NODES: usize = MAX_NODES;
/// Largest graphlet size with a published orbit numbering.
pub const PUBLISHED_MAX_NODES: usize = 5;
/// Raw host patterns up to this size are classified by table lookup.
const PATTERN_TABLE_NODES: usize = 5;
const NO_ORBIT: u32 = u32::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AtlasError {
    #[error("graphlet size {0} outside the supported range 2..={MAX_GRAPHLET_NODES}")]
    UnsupportedSize(usize),
    #[error("orbit {0} has no published numbering (only graphlets on at most {PUBLISHED_MAX_NODES} nodes do)")]
    NoPublishedNumbering(usize),
    #[error("{got} nodes exceed the atlas size {max}")]
    TooManyNodes { got: usize, max: usize },
}

/// Which orbit numbering to use when printing or exporting columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Numbering {
    Internal,
    #[default]
    Przulj,
}

#[derive(Debug, Clone)]
pub struct Graphlet {
    pub id: usize,
    /// Adjacency in canonical labelling.
    pub graph: SmallGraph,
    pub code: u64,
    pub automorphisms: Vec<[u8; MAX_NODES]>,
    /// Global node-orbit id of each canonical node.
    pub node_orbits: Vec<usize>,
    /// Canonical edges `(a, b)`, `a < b`, lexicographic.
    pub edges: Vec<(u8, u8)>,
    /// Global edge-orbit id parallel to `edges`.
    pub edge_orbits: Vec<usize>,
    edge_orbit_matrix: [[u32; MAX_NODES]; MAX_NODES],
}

impl Graphlet {
    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_complete(&self) -> bool {
        self.graph.is_complete()
    }

    /// Global edge-orbit id of canonical edge `{a, b}`.
    pub fn edge_orbit(&self, a: u8, b: u8) -> Option<usize> {
        let o = self.edge_orbit_matrix[a as usize][b as usize];
        (o != NO_ORBIT).then_some(o as usize)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitInfo {
    pub graphlet: usize,
    /// Smallest canonical node in the orbit.
    pub representative: u8,
    pub size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeOrbitInfo {
    pub graphlet: usize,
    /// Lexicographically smallest canonical edge in the orbit.
    pub representative: (u8, u8),
    pub size: usize,
}

/// Classification of a concrete node tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub graphlet: usize,
    /// Global node-orbit id per input position.
    pub node_orbits: Vec<usize>,
    /// Canonical node of each input position.
    pub canonical: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classified {
    Graphlet(Classification),
    Disconnected,
}

/// Precomputed classification of a raw adjacency code on `s` positions.
#[derive(Debug, Clone, Copy)]
pub struct PatternClass {
    pub graphlet: u32,
    /// Canonical node of each position.
    pub canonical: [u8; MAX_NODES],
}

#[derive(Debug, Clone)]
struct Published {
    to_published: Vec<Option<usize>>,
    to_internal: Vec<usize>,
    graphlet_ids: Vec<Option<usize>>,
}

#[derive(Debug, Clone)]
pub struct Atlas {
    max_nodes: usize,
    graphlets: Vec<Graphlet>,
    orbits: Vec<OrbitInfo>,
    edge_orbits: Vec<EdgeOrbitInfo>,
    by_code: HashMap<(usize, u64), usize>,
    by_degrees: HashMap<Vec<u8>, usize>,
    patterns: Vec<Vec<Option<PatternClass>>>,
    published: Published,
}

impl Atlas {
    /// Builds every connected graphlet on `2..=k` nodes.
    pub fn build(k: usize) -> Result<Atlas, AtlasError> {
        if !(2..=MAX_GRAPHLET_NODES).contains(&k) {
            return Err(AtlasError::UnsupportedSize(k));
        }

        // Every connected graph has a non-cut vertex, so each size is
        // reachable by attaching one node to a graphlet of the size below.
        let mut levels: Vec<Vec<(u64, SmallGraph)>> = vec![Vec::new(); k + 1];
        let edge = SmallGraph::from_edges(2, &[(0, 1)]);
        levels[2].push((edge.canonical_form().code, edge));
        for size in 3..=k {
            let mut found: HashMap<u64, SmallGraph> = HashMap::new();
            for (_, smaller) in &levels[size - 1] {
                for mask in 1..(1u16 << (size - 1)) {
                    let g = smaller.with_new_node(mask as u8);
                    let cf = g.canonical_form();
                    found.entry(cf.code).or_insert_with(|| g.relabeled(&cf.order));
                }
            }
            let mut level: Vec<(u64, SmallGraph)> = found.into_iter().collect();
            level.sort_by_key(|(code, g)| (g.edge_count(), *code));
            levels[size] = level;
        }

        let mut graphlets = Vec::new();
        let mut orbits = Vec::new();
        let mut edge_orbits = Vec::new();
        let mut by_code = HashMap::new();
        for (size, level) in levels.iter().enumerate() {
            for &(code, graph) in level {
                let id = graphlets.len();
                by_code.insert((size, code), id);
                graphlets.push(make_graphlet(id, graph, code, &mut orbits, &mut edge_orbits));
            }
        }

        let mut by_degrees = HashMap::new();
        for g in graphlets.iter().filter(|g| g.node_count() <= 4) {
            let prev = by_degrees.insert(degree_sequence(&g.graph, g.graph.all_nodes()), g.id);
            debug_assert!(prev.is_none(), "degree sequences identify graphlets up to four nodes");
        }

        let mut atlas = Atlas {
            max_nodes: k,
            graphlets,
            orbits,
            edge_orbits,
            by_code,
            by_degrees,
            patterns: Vec::new(),
            published: Published { to_published: Vec::new(), to_internal: Vec::new(), graphlet_ids: Vec::new() },
        };
        atlas.patterns = (0..=k.min(PATTERN_TABLE_NODES)).map(|s| atlas.pattern_table(s)).collect();
        atlas.published = atlas.published_numbering();
        Ok(atlas)
    }

    pub fn max_nodes(&self) -> usize {
        self.max_nodes
    }

    pub fn graphlets(&self) -> &[Graphlet] {
        &self.graphlets
    }

    pub fn graphlet(&self, id: usize) -> &Graphlet {
        &self.graphlets[id]
    }

    /// Graphlets with exactly `k` nodes.
    pub fn graphlets_of_size(&self, k: usize) -> impl Iterator<Item = &Graphlet> {
        self.graphlets.iter().filter(move |g| g.node_count() == k)
    }

    pub fn orbits(&self) -> &[OrbitInfo] {
        &self.orbits
    }

    pub fn orbit(&self, id: usize) -> OrbitInfo {
        self.orbits[id]
    }

    pub fn edge_orbits(&self) -> &[EdgeOrbitInfo] {
        &self.edge_orbits
    }

    pub fn edge_orbit(&self, id: usize) -> EdgeOrbitInfo {
        self.edge_orbits[id]
    }

    /// Node orbits of graphlets with exactly `k` nodes, as an id range.
    pub fn orbit_range(&self, k: usize) -> std::ops::Range<usize> {
        range_of(self.orbits.iter().map(|o| self.graphlets[o.graphlet].node_count()), k)
    }

    /// Edge orbits of graphlets with exactly `k` nodes, as an id range.
    pub fn edge_orbit_range(&self, k: usize) -> std::ops::Range<usize> {
        range_of(self.edge_orbits.iter().map(|o| self.graphlets[o.graphlet].node_count()), k)
    }

    /// Graphlet id of a small graph, or `None` when it is disconnected.
    pub fn lookup(&self, g: &SmallGraph) -> Option<(usize, Vec<u8>)> {
        if !g.is_connected() || g.node_count() < 2 || g.node_count() > self.max_nodes {
            return None;
        }
        let cf = g.canonical_form();
        let id = *self.by_code.get(&(g.node_count(), cf.code))?;
        let pos = cf.positions();
        Some((id, pos[..g.node_count()].to_vec()))
    }

    /// Classification of a raw adjacency code on `s` positions.
    pub fn classify_code(&self, s: usize, code: u64) -> Option<PatternClass> {
        if let Some(table) = self.patterns.get(s) {
            return table[code as usize];
        }
        let g = SmallGraph::from_code(s, code);
        let (graphlet, canonical) = self.lookup(&g)?;
        let mut c = [0u8; MAX_NODES];
        c[..s].copy_from_slice(&canonical);
        Some(PatternClass { graphlet: graphlet as u32, canonical: c })
    }

    /// Classifies the subgraph of `g` induced by `nodes`.
    ///
    /// Four-node sets are recognised from their degree sequence alone.
    pub fn classify(&self, g: &Graph, nodes: &NodeSet) -> Result<Classified, AtlasError> {
        let ids = nodes.as_slice();
        if ids.len() > self.max_nodes {
            return Err(AtlasError::TooManyNodes { got: ids.len(), max: self.max_nodes });
        }
        let mut local = SmallGraph::empty(ids.len());
        for i in 0..ids.len() {
            for j in i + 1..ids.len() {
                if g.adjacent(ids[i], ids[j]) {
                    local.add_edge(i as u8, j as u8);
                }
            }
        }
        if ids.len() < 2 || !local.is_connected() {
            return Ok(Classified::Disconnected);
        }

        if ids.len() == 4 {
            let graphlet = self.by_degrees[&degree_sequence(&local, local.all_nodes())];
            let canon = &self.graphlets[graphlet];
            // within a four-node graphlet, node degree determines the orbit
            let node_orbits: Vec<usize> = (0..4u8)
                .map(|v| {
                    let d = local.degree(v);
                    let c = (0..4u8).find(|&c| canon.graph.degree(c) == d).expect("degree present");
                    canon.node_orbits[c as usize]
                })
                .collect();
            let canonical = self.lookup(&local).expect("connected").1;
            return Ok(Classified::Graphlet(Classification { graphlet, node_orbits, canonical }));
        }

        let (graphlet, canonical) = self.lookup(&local).expect("connected graph is in the atlas");
        let node_orbits = canonical.iter().map(|&c| self.graphlets[graphlet].node_orbits[c as usize]).collect();
        Ok(Classified::Graphlet(Classification { graphlet, node_orbits, canonical }))
    }

    /// Published number of an internal node-orbit id.
    pub fn przulj_id(&self, orbit: usize) -> Result<usize, AtlasError> {
        self.published.to_published.get(orbit).copied().flatten().ok_or(AtlasError::NoPublishedNumbering(orbit))
    }

    /// Internal node-orbit id of a published orbit number.
    pub fn internal_from_przulj(&self, published: usize) -> Option<usize> {
        self.published.to_internal.get(published).copied()
    }

    /// Published graphlet number (`G0..G29`).
    pub fn przulj_graphlet_id(&self, graphlet: usize) -> Option<usize> {
        self.published.graphlet_ids.get(graphlet).copied().flatten()
    }

    /// Display label of a node orbit under `numbering`.
    pub fn orbit_label(&self, orbit: usize, numbering: Numbering) -> usize {
        match numbering {
            Numbering::Przulj => self.przulj_id(orbit).unwrap_or(orbit),
            Numbering::Internal => orbit,
        }
    }

    /// Display name of a graphlet under `numbering` (`G7` or `g7`).
    pub fn graphlet_name(&self, graphlet: usize, numbering: Numbering) -> String {
        match (numbering, self.przulj_graphlet_id(graphlet)) {
            (Numbering::Przulj, Some(p)) => format!("G{p}"),
            _ => format!("g{graphlet}"),
        }
    }

    fn pattern_table(&self, s: usize) -> Vec<Option<PatternClass>> {
        (0..1u64 << pair_count(s))
            .map(|code| {
                let g = SmallGraph::from_code(s, code);
                self.lookup(&g).map(|(graphlet, canonical)| {
                    let mut c = [0u8; MAX_NODES];
                    c[..s].copy_from_slice(&canonical);
                    PatternClass { graphlet: graphlet as u32, canonical: c }
                })
            })
            .collect()
    }

    fn published_numbering(&self) -> Published {
        let mut to_published = vec![None; self.orbits.len()];
        let mut graphlet_ids = vec![None; self.graphlets.len()];
        for (gid, reference) in przulj::REFERENCE.iter().enumerate() {
            if reference.nodes > self.max_nodes {
                continue;
            }
            let g = SmallGraph::from_edges(reference.nodes, reference.edges);
            let (graphlet, canonical) = self.lookup(&g).expect("reference graphlets are connected");
            graphlet_ids[graphlet] = Some(gid);
            for (v, &published) in reference.orbits.iter().enumerate() {
                let internal = self.graphlets[graphlet].node_orbits[canonical[v] as usize];
                debug_assert!(to_published[internal].is_none_or(|p| p == published));
                to_published[internal] = Some(published);
            }
        }
        let mut to_internal = vec![usize::MAX; to_published.iter().flatten().count()];
        for (internal, p) in to_published.iter().enumerate() {
            if let Some(p) = p {
                to_internal[*p] = internal;
            }
        }
        Published { to_published, to_internal, graphlet_ids }
    }
}

fn range_of(sizes: impl Iterator<Item = usize>, k: usize) -> std::ops::Range<usize> {
    let mut start = None;
    let mut end = 0;
    for (i, s) in sizes.enumerate() {
        if s == k {
            start.get_or_insert(i);
            end = i + 1;
        }
    }
    match start {
        Some(s) => s..end,
        None => 0..0,
    }
}

fn degree_sequence(g: &SmallGraph, mask: u8) -> Vec<u8> {
    let mut d: Vec<u8> = mask_nodes(mask).map(|v| (g.neighbors(v) & mask).count_ones() as u8).collect();
    d.sort_unstable();
    d
}

fn make_graphlet(
    id: usize,
    graph: SmallGraph,
    code: u64,
    orbits: &mut Vec<OrbitInfo>,
    edge_orbits: &mut Vec<EdgeOrbitInfo>,
) -> Graphlet {
    let k = graph.node_count();
    let automorphisms = graph.automorphisms();

    let mut node_orbits = vec![usize::MAX; k];
    for v in 0..k {
        if node_orbits[v] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = {
            let mut m: Vec<usize> = automorphisms.iter().map(|a| a[v] as usize).collect();
            m.sort_unstable();
            m.dedup();
            m
        };
        let orbit = orbits.len();
        orbits.push(OrbitInfo { graphlet: id, representative: v as u8, size: members.len() });
        for u in members {
            node_orbits[u] = orbit;
        }
    }

    let edges = graph.edges();
    let mut edge_orbit_matrix = [[NO_ORBIT; MAX_NODES]; MAX_NODES];
    let mut per_edge = vec![usize::MAX; edges.len()];
    for (i, &(a, b)) in edges.iter().enumerate() {
        if per_edge[i] != usize::MAX {
            continue;
        }
        let mut images: Vec<(u8, u8)> = automorphisms
            .iter()
            .map(|p| {
                let (x, y) = (p[a as usize], p[b as usize]);
                (x.min(y), x.max(y))
            })
            .collect();
        images.sort_unstable();
        images.dedup();
        let orbit = edge_orbits.len();
        edge_orbits.push(EdgeOrbitInfo { graphlet: id, representative: (a, b), size: images.len() });
        for (x, y) in images {
            let j = edges.iter().position(|&e| e == (x, y)).expect("automorphism maps edges to edges");
            per_edge[j] = orbit;
            edge_orbit_matrix[x as usize][y as usize] = orbit as u32;
            edge_orbit_matrix[y as usize][x as usize] = orbit as u32;
        }
    }

    Graphlet { id, graph, code, automorphisms, node_orbits, edges, edge_orbits: per_edge, edge_orbit_matrix }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn census(atlas: &Atlas, k: usize) -> (usize, usize, usize) {
        let graphlets = atlas.graphlets_of_size(k).count();
        (graphlets, atlas.orbit_range(k).len(), atlas.edge_orbit_range(k).len())
    }

    #[test]
    fn published_census() {
        let atlas = Atlas::build(5).unwrap();
        assert_eq!(atlas.graphlets().len(), 30);
        assert_eq!(atlas.orbits().len(), 73);
        assert_eq!(census(&atlas, 2), (1, 1, 1));
        assert_eq!(census(&atlas, 3), (2, 3, 2));
        assert_eq!(census(&atlas, 4).0, 6);
        assert_eq!(census(&atlas, 4).1, 11);
        assert_eq!(census(&atlas, 5).1, 58);
    }

    #[test]
    fn larger_census() {
        // connected graphs on 6 and 7 nodes: 112 and 853
        let atlas = Atlas::build(7).unwrap();
        assert_eq!(atlas.graphlets_of_size(6).count(), 112);
        assert_eq!(atlas.graphlets_of_size(7).count(), 853);
    }

    #[test]
    fn unsupported_sizes() {
        assert_eq!(Atlas::build(1).unwrap_err(), AtlasError::UnsupportedSize(1));
        assert_eq!(Atlas::build(9).unwrap_err(), AtlasError::UnsupportedSize(9));
        assert_eq!(Atlas::build(2).unwrap().graphlets().len(), 1);
    }

    #[test]
    fn sorted_by_size_edges_code() {
        let atlas = Atlas::build(6).unwrap();
        let keys: Vec<_> = atlas.graphlets().iter().map(|g| (g.node_count(), g.edge_count(), g.code)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn orbit_sizes_sum_to_nodes_and_edges() {
        let atlas = Atlas::build(6).unwrap();
        for g in atlas.graphlets() {
            let nodes: usize = atlas.orbits().iter().filter(|o| o.graphlet == g.id).map(|o| o.size).sum();
            let edges: usize = atlas.edge_orbits().iter().filter(|o| o.graphlet == g.id).map(|o| o.size).sum();
            assert_eq!(nodes, g.node_count());
            assert_eq!(edges, g.edge_count());
        }
    }

    #[test]
    fn orbit_partition_matches_permutation_search() {
        let atlas = Atlas::build(6).unwrap();
        for g in atlas.graphlets() {
            let k = g.node_count();
            // brute force over all k! permutations
            let mut perm: Vec<u8> = (0..k as u8).collect();
            let mut same = vec![vec![false; k]; k];
            let mut same_edge = HashMap::new();
            loop {
                let is_auto = g.edges.iter().all(|&(a, b)| g.graph.has_edge(perm[a as usize], perm[b as usize]));
                if is_auto {
                    for v in 0..k {
                        same[v][perm[v] as usize] = true;
                    }
                    for &(a, b) in &g.edges {
                        let (x, y) = (perm[a as usize], perm[b as usize]);
                        same_edge.insert(((a, b), (x.min(y), x.max(y))), true);
                    }
                }
                if !next_permutation(&mut perm) {
                    break;
                }
            }
            for u in 0..k {
                for v in 0..k {
                    assert_eq!(same[u][v], g.node_orbits[u] == g.node_orbits[v]);
                }
            }
            for &e in &g.edges {
                for &f in &g.edges {
                    let shared = same_edge.contains_key(&(e, f));
                    assert_eq!(shared, g.edge_orbit(e.0, e.1) == g.edge_orbit(f.0, f.1));
                }
            }
        }
    }

    fn next_permutation(p: &mut [u8]) -> bool {
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    fn host(n: usize, edges: &[(u32, u32)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    fn published_orbits(atlas: &Atlas, c: &Classified) -> Vec<usize> {
        match c {
            Classified::Graphlet(c) => c.node_orbits.iter().map(|&o| atlas.przulj_id(o).unwrap()).collect(),
            Classified::Disconnected => panic!("expected a graphlet"),
        }
    }

    #[test]
    fn classify_anchors() {
        let atlas = Atlas::build(5).unwrap();
        let c4 = host(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let all = NodeSet::new([0, 1, 2, 3]);
        assert_eq!(published_orbits(&atlas, &atlas.classify(&c4, &all).unwrap()), vec![8; 4]);

        let diamond = host(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)]);
        let orbits = published_orbits(&atlas, &atlas.classify(&diamond, &all).unwrap());
        assert_eq!(orbits, vec![12, 13, 12, 13]);

        let p5 = host(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let orbits = published_orbits(&atlas, &atlas.classify(&p5, &NodeSet::new(0..5)).unwrap());
        assert_eq!(orbits, vec![15, 16, 17, 16, 15]);

        assert_eq!(atlas.classify(&c4, &NodeSet::new([0, 2])).unwrap(), Classified::Disconnected);
    }

    #[test]
    fn published_ids() {
        let atlas = Atlas::build(5).unwrap();
        let c4 = atlas.graphlets_of_size(4).find(|g| g.edge_count() == 4 && (0..4).all(|v| g.graph.degree(v) == 2));
        let c4 = c4.unwrap();
        assert_eq!(atlas.przulj_id(c4.node_orbits[0]).unwrap(), 8);
        assert_eq!(atlas.przulj_graphlet_id(c4.id), Some(5));

        let k5 = atlas.graphlets_of_size(5).find(|g| g.is_complete()).unwrap();
        assert_eq!(atlas.przulj_id(k5.node_orbits[0]).unwrap(), 72);
        assert_eq!(k5.node_orbits[0], 72);

        // bijection over 0..=72
        let mut seen: Vec<usize> = (0..73).map(|o| atlas.przulj_id(o).unwrap()).collect();
        seen.sort_unstable();
        assert_eq!(seen, (0..73).collect::<Vec<_>>());

        let big = Atlas::build(6).unwrap();
        let first6 = big.orbit_range(6).start;
        assert_eq!(big.przulj_id(first6), Err(AtlasError::NoPublishedNumbering(first6)));
    }

    #[test]
    fn degree_route_agrees_with_canonical_route() {
        let atlas = Atlas::build(4).unwrap();
        for code in 0..64u64 {
            let small = SmallGraph::from_code(4, code);
            let edges: Vec<(u32, u32)> = small.edges().iter().map(|&(a, b)| (a as u32, b as u32)).collect();
            let g = host(4, &edges);
            let by_degree = atlas.classify(&g, &NodeSet::new(0..4)).unwrap();
            match (by_degree, atlas.classify_code(4, code)) {
                (Classified::Disconnected, None) => {}
                (Classified::Graphlet(c), Some(p)) => {
                    assert_eq!(c.graphlet, p.graphlet as usize);
                    for v in 0..4 {
                        let via_table = atlas.graphlet(c.graphlet).node_orbits[p.canonical[v] as usize];
                        assert_eq!(c.node_orbits[v], via_table);
                    }
                }
                other => panic!("routes disagree: {other:?}"),
            }
        }
    }
}
