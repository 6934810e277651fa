//! Bit-matrix graphs on at most eight nodes.
//!
//! Adjacency codes list the upper triangle column by column:
//! `(0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ...`, first pair in the most
//! significant bit. A code over the first `j` nodes is therefore a prefix of
//! the code over `j + 1` nodes, which the canonical search and the host
//! enumerators both rely on.

pub const MAX_NODES: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SmallGraph {
    k: u8,
    rows: [u8; MAX_NODES],
}

/// Number of node pairs on `k` nodes.
#[inline]
pub const fn pair_count(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

impl SmallGraph {
    pub fn empty(k: usize) -> Self {
        assert!(k <= MAX_NODES, "small graphs hold at most {MAX_NODES} nodes");
        SmallGraph { k: k as u8, rows: [0; MAX_NODES] }
    }

    pub fn from_edges(k: usize, edges: &[(u8, u8)]) -> Self {
        let mut g = SmallGraph::empty(k);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    /// Inverse of [`SmallGraph::code`].
    pub fn from_code(k: usize, code: u64) -> Self {
        let mut g = SmallGraph::empty(k);
        let total = pair_count(k);
        let mut bit = total;
        for j in 1..k {
            for i in 0..j {
                bit -= 1;
                if code >> bit & 1 == 1 {
                    g.add_edge(i as u8, j as u8);
                }
            }
        }
        g
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.k as usize
    }

    #[inline]
    pub fn has_edge(&self, a: u8, b: u8) -> bool {
        self.rows[a as usize] >> b & 1 == 1
    }

    pub fn add_edge(&mut self, a: u8, b: u8) {
        assert!(a != b && (a as usize) < self.node_count() && (b as usize) < self.node_count());
        self.rows[a as usize] |= 1 << b;
        self.rows[b as usize] |= 1 << a;
    }

    /// Neighbour bitmask of `v`.
    #[inline]
    pub fn neighbors(&self, v: u8) -> u8 {
        self.rows[v as usize]
    }

    #[inline]
    pub fn degree(&self, v: u8) -> usize {
        self.rows[v as usize].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows[..self.node_count()].iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(u8, u8)> {
        let k = self.k;
        (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).filter(|&(a, b)| self.has_edge(a, b)).collect()
    }

    pub fn all_nodes(&self) -> u8 {
        if self.k as usize == MAX_NODES {
            u8::MAX
        } else {
            (1u8 << self.k) - 1
        }
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == pair_count(self.node_count())
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_subset(self.all_nodes())
    }

    /// Whether the subgraph induced by `mask` is connected (the empty set is not).
    pub fn is_connected_subset(&self, mask: u8) -> bool {
        if mask == 0 {
            return false;
        }
        let start = mask.trailing_zeros() as usize;
        let mut seen = 1u8 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let next = self.rows[v] & mask & !seen;
            seen |= next;
            frontier |= next;
        }
        seen == mask
    }

    /// Removes `v`; returns the smaller graph and the old-to-new index map
    /// (`None` for `v` itself).
    pub fn remove_node(&self, v: u8) -> (SmallGraph, [Option<u8>; MAX_NODES]) {
        let mut map = [None; MAX_NODES];
        let mut next = 0u8;
        for u in 0..self.k {
            if u != v {
                map[u as usize] = Some(next);
                next += 1;
            }
        }
        let mut g = SmallGraph::empty(self.node_count() - 1);
        for (a, b) in self.edges() {
            if let (Some(na), Some(nb)) = (map[a as usize], map[b as usize]) {
                g.add_edge(na, nb);
            }
        }
        (g, map)
    }

    /// Adds a new node (index `k`) adjacent to exactly the nodes in `mask`.
    pub fn with_new_node(&self, mask: u8) -> SmallGraph {
        let mut g = *self;
        g.k += 1;
        let y = self.k;
        for v in 0..self.k {
            if mask >> v & 1 == 1 {
                g.add_edge(v, y);
            }
        }
        g
    }

    /// Relabels so that new node `i` is old node `order[i]`.
    pub fn relabeled(&self, order: &[u8]) -> SmallGraph {
        let k = self.node_count();
        let mut g = SmallGraph::empty(k);
        for i in 0..k {
            for j in i + 1..k {
                if self.has_edge(order[i], order[j]) {
                    g.add_edge(i as u8, j as u8);
                }
            }
        }
        g
    }

    pub fn code(&self) -> u64 {
        let mut code = 0u64;
        for j in 1..self.k {
            code = (code << j) | self.column_bits(j, |i| i);
        }
        code
    }

    #[inline]
    fn column_bits(&self, j: u8, label: impl Fn(u8) -> u8) -> u64 {
        let mut bits = 0u64;
        let vj = label(j);
        for i in 0..j {
            bits = (bits << 1) | u64::from(self.has_edge(label(i), vj));
        }
        bits
    }

    /// Minimal adjacency code over all node orderings, plus one ordering
    /// attaining it (`order[i]` is the node placed at canonical position `i`).
    pub fn canonical_form(&self) -> CanonicalForm {
        let k = self.node_count();
        if k == 0 {
            return CanonicalForm { code: 0, order: Vec::new() };
        }
        // Breadth-first branch and bound: every surviving partial ordering
        // has the minimal code prefix for its length.
        let mut frontier: Vec<(Vec<u8>, u8)> = (0..k as u8).map(|v| (vec![v], 1u8 << v)).collect();
        let mut code = 0u64;
        for j in 1..k {
            let mut best = u64::MAX;
            let mut next: Vec<(Vec<u8>, u8)> = Vec::new();
            for (order, used) in &frontier {
                for v in 0..k as u8 {
                    if used >> v & 1 == 1 {
                        continue;
                    }
                    let mut bits = 0u64;
                    for &u in order.iter() {
                        bits = (bits << 1) | u64::from(self.has_edge(u, v));
                    }
                    if bits < best {
                        best = bits;
                        next.clear();
                    }
                    if bits == best {
                        let mut o = order.clone();
                        o.push(v);
                        next.push((o, used | 1 << v));
                    }
                }
            }
            code = (code << j) | best;
            frontier = next;
        }
        CanonicalForm { code, order: frontier.swap_remove(0).0 }
    }

    /// All automorphisms as node maps `perm[v] = image of v`.
    pub fn automorphisms(&self) -> Vec<[u8; MAX_NODES]> {
        let k = self.node_count();
        let mut out = Vec::new();
        let mut perm = [0u8; MAX_NODES];
        self.extend_isomorphism(self, 0, 0, &mut perm, &mut out, &|_, _| true);
        debug_assert!(k == 0 || !out.is_empty());
        out
    }

    /// Isomorphisms `self -> other` (as `map[v]` = image of v) that satisfy
    /// the per-node constraint `allowed(v, image)`.
    pub fn isomorphisms_to(
        &self,
        other: &SmallGraph,
        allowed: &dyn Fn(u8, u8) -> bool,
    ) -> Vec<[u8; MAX_NODES]> {
        let mut out = Vec::new();
        if self.k != other.k || self.edge_count() != other.edge_count() {
            return out;
        }
        let mut perm = [0u8; MAX_NODES];
        self.extend_isomorphism(other, 0, 0, &mut perm, &mut out, allowed);
        out
    }

    /// First isomorphism `self -> other` satisfying `allowed`, if any.
    pub fn find_isomorphism(
        &self,
        other: &SmallGraph,
        allowed: &dyn Fn(u8, u8) -> bool,
    ) -> Option<[u8; MAX_NODES]> {
        self.isomorphisms_to(other, allowed).into_iter().next()
    }

    fn extend_isomorphism(
        &self,
        other: &SmallGraph,
        v: u8,
        used: u8,
        perm: &mut [u8; MAX_NODES],
        out: &mut Vec<[u8; MAX_NODES]>,
        allowed: &dyn Fn(u8, u8) -> bool,
    ) {
        if v == self.k {
            out.push(*perm);
            return;
        }
        for w in 0..other.k {
            if used >> w & 1 == 1 || self.degree(v) != other.degree(w) || !allowed(v, w) {
                continue;
            }
            let consistent = (0..v).all(|u| self.has_edge(u, v) == other.has_edge(perm[u as usize], w));
            if consistent {
                perm[v as usize] = w;
                self.extend_isomorphism(other, v + 1, used | 1 << w, perm, out, allowed);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub code: u64,
    pub order: Vec<u8>,
}

impl CanonicalForm {
    /// `position[v]`: canonical position of original node `v`.
    pub fn positions(&self) -> [u8; MAX_NODES] {
        let mut pos = [0u8; MAX_NODES];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v as usize] = i as u8;
        }
        pos
    }
}

/// Iterates the set bits of a node mask.
pub fn mask_nodes(mask: u8) -> impl Iterator<Item = u8> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as u8;
            m &= m - 1;
            Some(v)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn code_roundtrip_and_prefix() {
        let g = SmallGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        assert_eq!(SmallGraph::from_code(4, g.code()), g);
        // (0,1)=1 (0,2)=0 (1,2)=1 (0,3)=1 (1,3)=0 (2,3)=1
        assert_eq!(g.code(), 0b101101);
        let first3 = SmallGraph::from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(g.code() >> 3, first3.code());
    }

    #[test]
    fn p3_labelings_share_canonical_form() {
        let a = SmallGraph::from_edges(3, &[(0, 1), (1, 2)]);
        let b = SmallGraph::from_edges(3, &[(0, 2), (2, 1)]);
        assert_eq!(a.canonical_form().code, b.canonical_form().code);
    }

    #[test]
    fn k4_is_all_ones_and_c4_differs_from_diamond() {
        let k4 = SmallGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(k4.canonical_form().code, 0b111111);
        let c4 = SmallGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        let diamond = SmallGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]);
        assert_ne!(c4.canonical_form().code, diamond.canonical_form().code);
    }

    #[test]
    fn canonical_order_reproduces_code() {
        let g = SmallGraph::from_edges(5, &[(0, 4), (4, 2), (2, 1), (1, 3), (3, 4)]);
        let cf = g.canonical_form();
        assert_eq!(g.relabeled(&cf.order).code(), cf.code);
    }

    #[test]
    fn connectivity_and_automorphisms() {
        let p4 = SmallGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        assert!(p4.is_connected());
        assert!(!p4.is_connected_subset(0b1001));
        assert_eq!(p4.automorphisms().len(), 2);
        let c5 = SmallGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(c5.automorphisms().len(), 10);
    }
}
