//! Per-row clique counts by ordered expansion.

use rayon::prelude::*;

use crate::equations::Mode;
use crate::graph::{Graph, NodeId};
use crate::small::MAX_NODES;

/// Cliques on `4..=k` nodes per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueCounts {
    pub k: usize,
    pub rows: usize,
    /// `counts[s - 4][row]`.
    pub counts: Vec<Vec<u64>>,
    /// Candidate nodes examined while growing cliques.
    pub visits: u64,
}

impl CliqueCounts {
    pub fn get(&self, size: usize, row: usize) -> u64 {
        self.counts[size - 4][row]
    }
}

struct Acc {
    counts: Vec<Vec<u64>>,
    visits: u64,
}

/// A node that extends the current clique, with the ids of its edges to the
/// clique members by position.
#[derive(Clone, Copy)]
struct Cand {
    v: NodeId,
    edges: [u32; MAX_NODES],
}

/// Every clique is grown once, in ascending node order, from the higher
/// neighbours of its smallest node.
pub fn count_cliques(g: &Graph, k: usize, mode: Mode) -> CliqueCounts {
    let rows = match mode {
        Mode::Node => g.node_count(),
        Mode::Edge => g.edge_count(),
    };
    let sizes = k.saturating_sub(3);
    let fresh = || Acc { counts: vec![vec![0u64; rows]; sizes], visits: 0 };
    let acc = if sizes == 0 {
        fresh()
    } else {
        (0..g.node_count() as NodeId)
            .into_par_iter()
            .fold(
                || (fresh(), vec![Vec::new(); MAX_NODES]),
                |(mut acc, mut bufs), v| {
                    let mut cands = std::mem::take(&mut bufs[0]);
                    cands.clear();
                    for (&u, &e) in g.neighbors(v).iter().zip(g.incident_edges(v)) {
                        if u > v {
                            let mut edges = [0; MAX_NODES];
                            edges[0] = e;
                            cands.push(Cand { v: u, edges });
                        }
                    }
                    let mut grower = Grower { g, k, mode, clique: vec![v], internal: Vec::new(), acc: &mut acc };
                    grower.grow(&cands, &mut bufs[1..]);
                    bufs[0] = cands;
                    (acc, bufs)
                },
            )
            .map(|(acc, _)| acc)
            .reduce(fresh, |mut a, b| {
                for (x, y) in a.counts.iter_mut().zip(b.counts) {
                    for (p, q) in x.iter_mut().zip(y) {
                        *p += q;
                    }
                }
                a.visits += b.visits;
                a
            })
    };
    CliqueCounts { k, rows, counts: acc.counts, visits: acc.visits }
}

struct Grower<'a> {
    g: &'a Graph,
    k: usize,
    mode: Mode,
    clique: Vec<NodeId>,
    /// Edge ids inside the clique.
    internal: Vec<u32>,
    acc: &'a mut Acc,
}

impl Grower<'_> {
    /// Records `times` cliques made of the current clique plus one of `extra`.
    fn record(&mut self, extra: &[Cand], times: u64) {
        let size = self.clique.len() + 1;
        let slot = &mut self.acc.counts[size - 4];
        match self.mode {
            Mode::Node => {
                for &m in &self.clique {
                    slot[m as usize] += times;
                }
                for c in extra {
                    slot[c.v as usize] += 1;
                }
            }
            Mode::Edge => {
                for &e in &self.internal {
                    slot[e as usize] += times;
                }
                for c in extra {
                    for &e in &c.edges[..size - 1] {
                        slot[e as usize] += 1;
                    }
                }
            }
        }
    }

    fn grow(&mut self, cands: &[Cand], bufs: &mut [Vec<Cand>]) {
        let size = self.clique.len();
        if size + 1 == self.k {
            // each candidate closes a k-clique
            self.acc.visits += cands.len() as u64;
            self.record(cands, cands.len() as u64);
            return;
        }
        let (next, rest) = bufs.split_first_mut().expect("depth below k");
        for (i, c) in cands.iter().enumerate() {
            self.acc.visits += 1;
            if size + 1 >= 4 {
                self.record(std::slice::from_ref(c), 1);
            }
            next.clear();
            let later = &cands[i + 1..];
            let (nb, ids) = (self.g.neighbors(c.v), self.g.incident_edges(c.v));
            let (mut a, mut b) = (0, 0);
            while a < later.len() && b < nb.len() {
                match later[a].v.cmp(&nb[b]) {
                    std::cmp::Ordering::Less => a += 1,
                    std::cmp::Ordering::Greater => b += 1,
                    std::cmp::Ordering::Equal => {
                        let mut d = later[a];
                        d.edges[size] = ids[b];
                        next.push(d);
                        a += 1;
                        b += 1;
                    }
                }
            }
            if size + 1 + next.len() < 4 || next.is_empty() {
                continue;
            }
            let mine = std::mem::take(next);
            self.clique.push(c.v);
            let added = self.internal.len();
            self.internal.extend_from_slice(&c.edges[..size]);
            self.grow(&mine, rest);
            self.internal.truncate(added);
            self.clique.pop();
            *next = mine;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::complete;

    #[test]
    fn complete_hosts() {
        let k4 = complete(4);
        assert_eq!(count_cliques(&k4, 4, Mode::Node).counts[0], vec![1; 4]);
        let k5 = complete(5);
        let c = count_cliques(&k5, 5, Mode::Node);
        assert_eq!(c.counts[0], vec![4; 5]);
        assert_eq!(c.counts[1], vec![1; 5]);
        let e = count_cliques(&k5, 5, Mode::Edge);
        assert_eq!(e.counts[0], vec![3; 10]);
        assert_eq!(e.counts[1], vec![1; 10]);
    }

    #[test]
    fn triangle_free() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(count_cliques(&c4, 4, Mode::Node).counts[0], vec![0; 4]);
    }
}
