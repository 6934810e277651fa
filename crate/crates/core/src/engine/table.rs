//! Precomputed common-neighbour counts for small node sets.

use rustc_hash::FxHashMap;

use super::EngineError;
use crate::graph::{Graph, NodeId};

/// Rough heap cost per stored pair and triple, hash-table overhead included.
const PAIR_BYTES: usize = 24;
const TRIPLE_BYTES: usize = 40;

/// `c(S)` for `|S| <= k - 3` (any set) and `|S| = k - 2` (connected sets),
/// keeping only nonzero counts. Singletons are read from degrees.
#[derive(Debug, Clone)]
pub struct CommonNeighborTable {
    k: usize,
    pairs: FxHashMap<u64, u32>,
    triples: FxHashMap<u128, u32>,
}

#[inline]
fn pair_key(a: NodeId, b: NodeId) -> u64 {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    (a as u64) << 32 | b as u64
}

#[inline]
fn triple_key(s: [NodeId; 3]) -> u128 {
    let mut s = s;
    s.sort_unstable();
    (s[0] as u128) << 64 | (s[1] as u128) << 32 | s[2] as u128
}

impl CommonNeighborTable {
    /// Builds the table by visiting neighbour subsets of every node.
    pub fn build(g: &Graph, k: usize, budget_bytes: usize) -> Result<Self, EngineError> {
        if !(4..=5).contains(&k) {
            return Err(EngineError::UnsupportedK(k));
        }
        let mut t = CommonNeighborTable { k, pairs: FxHashMap::default(), triples: FxHashMap::default() };
        let n = g.node_count();
        let mut local: Vec<u32> = vec![u32::MAX; n];
        let mut rows: Vec<Vec<u32>> = Vec::new();

        for w in 0..n as NodeId {
            let nb = g.neighbors(w);
            if nb.len() < 2 {
                continue;
            }
            for (i, &a) in nb.iter().enumerate() {
                local[a as usize] = i as u32;
            }
            // neighbours of each a inside N(w), as local indices
            rows.resize_with(nb.len().max(rows.len()), Vec::new);
            for (i, &a) in nb.iter().enumerate() {
                rows[i].clear();
                rows[i].extend(g.neighbors(a).iter().filter_map(|&b| {
                    let j = local[b as usize];
                    (j != u32::MAX).then_some(j)
                }));
            }

            if k == 4 {
                for (i, &a) in nb.iter().enumerate() {
                    for &j in rows[i].iter().filter(|&&j| j as usize > i) {
                        *t.pairs.entry(pair_key(a, nb[j as usize])).or_insert(0) += 1;
                    }
                }
            } else {
                for (i, &a) in nb.iter().enumerate() {
                    for &b in &nb[i + 1..] {
                        *t.pairs.entry(pair_key(a, b)).or_insert(0) += 1;
                    }
                }
                // connected triples via their middle node; a triangle is
                // reached from each of its nodes, so only its smallest counts
                for (m, &b) in nb.iter().enumerate() {
                    let r = &rows[m];
                    for (x, &i) in r.iter().enumerate() {
                        for &j in &r[x + 1..] {
                            let closed = rows[i as usize].binary_search(&j).is_ok();
                            if closed && (m as u32 > i || m as u32 > j) {
                                continue;
                            }
                            *t.triples.entry(triple_key([nb[i as usize], b, nb[j as usize]])).or_insert(0) += 1;
                        }
                    }
                }
            }

            for &a in nb {
                local[a as usize] = u32::MAX;
            }
            let bytes = t.estimated_bytes();
            if bytes > budget_bytes {
                return Err(EngineError::TableTooLarge { estimated_bytes: bytes, budget_bytes });
            }
        }
        Ok(t)
    }

    /// Largest set size the table answers.
    pub fn max_set_size(&self) -> usize {
        self.k - 2
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Stored nonzero entries.
    pub fn len(&self) -> usize {
        self.pairs.len() + self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn estimated_bytes(&self) -> usize {
        self.pairs.len() * PAIR_BYTES + self.triples.len() * TRIPLE_BYTES
    }

    /// `c(S)` for a set inside the table's domain; absent entries are zero.
    #[inline]
    pub fn get(&self, g: &Graph, set: &[NodeId]) -> u64 {
        match *set {
            [a] => g.degree(a) as u64,
            [a, b] => self.pairs.get(&pair_key(a, b)).copied().unwrap_or(0) as u64,
            [a, b, c] => self.triples.get(&triple_key([a, b, c])).copied().unwrap_or(0) as u64,
            _ => panic!("sets of size {} are outside the table", set.len()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::complete;
    use crate::graph::{generate_er_graph, NodeSet};

    #[test]
    fn small_hosts() {
        let tri = complete(3);
        let t = CommonNeighborTable::build(&tri, 4, usize::MAX).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.get(&tri, &[0, 1]), 1);

        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let t = CommonNeighborTable::build(&c4, 4, usize::MAX).unwrap();
        assert!(t.is_empty());
        assert_eq!(t.get(&c4, &[0, 1]), 0);

        let k4 = complete(4);
        let t = CommonNeighborTable::build(&k4, 5, usize::MAX).unwrap();
        assert_eq!(t.get(&k4, &[0, 3]), 2);
        assert_eq!(t.get(&k4, &[1, 2, 3]), 1);
        assert_eq!(t.len(), 6 + 4);
    }

    #[test]
    fn matches_direct_counts() {
        let g = generate_er_graph(40, 200, 7).unwrap();
        for k in [4, 5] {
            let t = CommonNeighborTable::build(&g, k, usize::MAX).unwrap();
            for a in 0..40u32 {
                for b in a + 1..40 {
                    let direct = g.common_neighbor_count(&NodeSet::new([a, b])).unwrap() as u64;
                    if k == 5 || g.adjacent(a, b) {
                        assert_eq!(t.get(&g, &[a, b]), direct);
                    }
                    if k == 5 {
                        for c in b + 1..40 {
                            let e = [g.adjacent(a, b), g.adjacent(a, c), g.adjacent(b, c)];
                            if e.iter().filter(|&&x| x).count() >= 2 {
                                let direct = g.common_neighbor_count(&NodeSet::new([a, b, c])).unwrap() as u64;
                                assert_eq!(t.get(&g, &[c, a, b]), direct);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn budget() {
        let g = complete(30);
        assert!(matches!(CommonNeighborTable::build(&g, 5, 1000), Err(EngineError::TableTooLarge { .. })));
    }
}
