//! Orbit counts for every node or edge of a host graph.
//!
//! A run has four stages: the common-neighbour table, clique counts, one
//! enumeration of the small connected sets around each row (which fills the
//! right-hand sides of every equation system up to `k`), and back
//! substitution per row.

mod cliques;
mod compile;
mod solve;
mod table;

use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

pub use self::cliques::{count_cliques, CliqueCounts};
pub use self::solve::solve_row;
pub use self::table::CommonNeighborTable;
use self::compile::{compile, Compiled, TermKind};
use crate::atlas::{Atlas, Numbering};
use crate::equations::{build_system, EquationError, EquationSystem, Mode};
pub use crate::matrix::OrbitCountMatrix;
use crate::graph::{Graph, NodeId};
use crate::small::{SmallGraph, MAX_NODES};

/// Graphlet sizes with a fast path.
pub const SUPPORTED_K: [usize; 2] = [4, 5];

const ROWS_PER_TASK: usize = 64;
const ROOT: u8 = 0x80;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("orbit counting supports k = 4 or 5, got {0}")]
    UnsupportedK(usize),
    #[error(transparent)]
    Equations(#[from] EquationError),
    #[error("common-neighbour table needs about {estimated_bytes} bytes, over the budget of {budget_bytes}")]
    TableTooLarge { estimated_bytes: usize, budget_bytes: usize },
    #[error("row {row}, orbit {orbit}: c({nodes:?}) = {count} is below its in-pattern count {correction}")]
    MissingTableEntry { row: usize, orbit: usize, nodes: Vec<NodeId>, count: u64, correction: u32 },
    #[error("orbit {orbit} needs common neighbours of pattern nodes {nodes:?}, which no table provides")]
    UnsupportedTerm { orbit: usize, nodes: Vec<u8> },
    #[error("row {row}, orbit {orbit}: {numerator} is not divisible by {divisor}")]
    InexactDivision { row: usize, orbit: usize, numerator: i128, divisor: u64 },
    #[error("row {row}, orbit {orbit}: negative count {value}")]
    NegativeCount { row: usize, orbit: usize, value: i128 },
    #[error("row {row}: count overflow")]
    Overflow { row: usize },
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

impl EngineError {
    /// Errors that indicate a defect rather than a bad request.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            EngineError::MissingTableEntry { .. }
                | EngineError::UnsupportedTerm { .. }
                | EngineError::InexactDivision { .. }
                | EngineError::NegativeCount { .. }
                | EngineError::Equations(_)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    /// Worker threads; 0 uses the machine's parallelism.
    pub threads: usize,
    /// Upper bound on the common-neighbour table, in bytes.
    pub memory_budget: usize,
    pub numbering: Numbering,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { threads: 0, memory_budget: 4 << 30, numbering: Numbering::Przulj }
    }
}

/// Operation counts and stage timings of one run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StageCounters {
    /// Connected sets enumerated around rows, by size.
    pub subgraphs: [u64; MAX_NODES + 1],
    pub clique_visits: u64,
    pub table_entries: u64,
    pub t_table: Duration,
    pub t_cliques: Duration,
    pub t_rows: Duration,
    pub t_total: Duration,
}

impl StageCounters {
    pub fn subgraphs_of_size(&self, s: usize) -> u64 {
        self.subgraphs.get(s).copied().unwrap_or(0)
    }
}

#[derive(Debug, Clone)]
pub struct CountOutput {
    pub matrix: OrbitCountMatrix,
    pub counters: StageCounters,
}

/// Internal ids of the orbits on two and three nodes.
#[derive(Debug, Clone, Copy)]
struct Lower {
    single: usize,
    path_end: usize,
    path_mid: usize,
    triangle: usize,
}

/// Equation systems for `4..=k`, compiled for host enumeration.
#[derive(Debug, Clone)]
pub struct OrbitCounter {
    atlas: Arc<Atlas>,
    k: usize,
    mode: Mode,
    systems: Vec<EquationSystem>,
    compiled: Vec<Compiled>,
    lower: Lower,
}

impl OrbitCounter {
    pub fn new(k: usize, mode: Mode) -> Result<Self, EngineError> {
        if !SUPPORTED_K.contains(&k) {
            return Err(EngineError::UnsupportedK(k));
        }
        let atlas = Arc::new(Atlas::build(k).map_err(EquationError::from)?);
        let systems = (4..=k).map(|s| build_system(&atlas, s, mode)).collect::<Result<Vec<_>, _>>()?;
        let compiled = systems.iter().map(|s| compile(s, k)).collect::<Result<Vec<_>, _>>()?;

        let p3 = atlas.lookup(&SmallGraph::from_edges(3, &[(0, 1), (1, 2)])).expect("path");
        let k3 = atlas.lookup(&SmallGraph::from_edges(3, &[(0, 1), (0, 2), (1, 2)])).expect("triangle");
        let k2 = atlas.lookup(&SmallGraph::from_edges(2, &[(0, 1)])).expect("edge");
        let lower = match mode {
            Mode::Node => {
                let g = atlas.graphlet(p3.0);
                Lower {
                    single: atlas.graphlet(k2.0).node_orbits[0],
                    path_end: g.node_orbits[p3.1[0] as usize],
                    path_mid: g.node_orbits[p3.1[1] as usize],
                    triangle: atlas.graphlet(k3.0).node_orbits[0],
                }
            }
            Mode::Edge => {
                let e = atlas.graphlet(p3.0).edge_orbits[0];
                Lower {
                    single: atlas.graphlet(k2.0).edge_orbits[0],
                    path_end: e,
                    path_mid: e,
                    triangle: atlas.graphlet(k3.0).edge_orbits[0],
                }
            }
        };
        Ok(OrbitCounter { atlas, k, mode, systems, compiled, lower })
    }

    pub fn atlas(&self) -> &Arc<Atlas> {
        &self.atlas
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Systems for graphlets on 4 up to `k` nodes.
    pub fn systems(&self) -> &[EquationSystem] {
        &self.systems
    }

    fn columns(&self) -> usize {
        OrbitCountMatrix::internal_columns(&self.atlas, self.mode, self.k)
    }

    pub fn count(&self, g: &Graph, config: &EngineConfig) -> Result<CountOutput, EngineError> {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if config.threads > 0 {
            builder = builder.num_threads(config.threads);
        }
        let pool = builder.build().map_err(|e| EngineError::ThreadPool(e.to_string()))?;
        pool.install(|| self.count_in_pool(g, config))
    }

    fn count_in_pool(&self, g: &Graph, config: &EngineConfig) -> Result<CountOutput, EngineError> {
        let start = Instant::now();
        let mut counters = StageCounters::default();

        let table = CommonNeighborTable::build(g, self.k, config.memory_budget)?;
        counters.table_entries = table.len() as u64;
        counters.t_table = start.elapsed();

        let t = Instant::now();
        let cliques = count_cliques(g, self.k, self.mode);
        counters.clique_visits = cliques.visits;
        counters.t_cliques = t.elapsed();

        let t = Instant::now();
        let dist2 = if self.mode == Mode::Edge && self.compiled.iter().any(|c| c.has_dist2) {
            Some(distance_two_sums(g))
        } else {
            None
        };
        let ctx = Ctx { g, table: &table, cliques: &cliques, dist2: dist2.as_deref() };

        let rows = match self.mode {
            Mode::Node => g.node_count(),
            Mode::Edge => g.edge_count(),
        };
        let cols = self.columns();
        let mut data = vec![0u64; rows * cols];
        let results: Vec<Result<[u64; MAX_NODES + 1], EngineError>> = if cols == 0 {
            Vec::new()
        } else {
            data.par_chunks_mut(cols * ROWS_PER_TASK)
                .enumerate()
                .map_init(
                    || Scratch::new(g.node_count(), &self.systems),
                    |s, (chunk, out)| {
                        s.subgraphs = [0; MAX_NODES + 1];
                        for (i, row_out) in out.chunks_mut(cols).enumerate() {
                            self.row(&ctx, s, chunk * ROWS_PER_TASK + i, row_out)?;
                        }
                        Ok(s.subgraphs)
                    },
                )
                .collect()
        };
        for r in results {
            for (a, b) in counters.subgraphs.iter_mut().zip(r?) {
                *a += b;
            }
        }
        counters.t_rows = t.elapsed();
        counters.t_total = start.elapsed();

        let matrix = OrbitCountMatrix::from_internal(&self.atlas, self.mode, self.k, config.numbering, data);
        Ok(CountOutput { matrix, counters })
    }

    fn row(&self, ctx: &Ctx, s: &mut Scratch, row: usize, out: &mut [u64]) -> Result<(), EngineError> {
        self.fill_rhs(ctx, s, row, out)?;
        for (i, sys) in self.systems.iter().enumerate() {
            let range = solve::orbit_range(sys);
            let clique = ctx.cliques.get(sys.k, row);
            solve_row(sys, &s.rhs[i], clique, row, &mut out[range])?;
        }
        Ok(())
    }

    /// Writes the lower orbits of `row` into `out` and the right-hand sides
    /// of every system into `s.rhs`.
    fn fill_rhs(&self, ctx: &Ctx, s: &mut Scratch, row: usize, out: &mut [u64]) -> Result<(), EngineError> {
        let g = ctx.g;
        for rhs in s.rhs.iter_mut() {
            rhs.iter_mut().for_each(|v| *v = 0);
        }
        s.error = None;

        let mut sub = [0 as NodeId; MAX_NODES];
        match self.mode {
            Mode::Node => {
                let x = row as NodeId;
                let d = g.degree(x) as u64;
                let mut closed = 0u64;
                let mut ends = 0u64;
                for &a in g.neighbors(x) {
                    let c = ctx.table.get(g, &[x, a]);
                    closed += c;
                    ends += g.degree(a) as u64 - 1 - c;
                }
                let t = closed / 2;
                out[self.lower.single] = d;
                out[self.lower.path_end] = ends;
                out[self.lower.path_mid] = d * d.saturating_sub(1) / 2 - t;
                out[self.lower.triangle] = t;

                let dist2 = self.compiled.iter().any(|c| c.has_dist2);
                if dist2 {
                    for &a in g.neighbors(x) {
                        for &w in g.neighbors(a) {
                            if w != x {
                                if s.cnt[w as usize] == 0 {
                                    s.touched.push(w);
                                }
                                s.cnt[w as usize] += 1;
                            }
                        }
                    }
                }
                sub[0] = x;
                s.adj[x as usize] |= ROOT;
                s.ext[1].clear();
                s.ext[1].extend_from_slice(g.neighbors(x));
                for &a in g.neighbors(x) {
                    s.adj[a as usize] |= 1;
                }
                self.expand(ctx, s, &mut sub, 1, 0);
                for &a in g.neighbors(x) {
                    s.adj[a as usize] = 0;
                }
                s.adj[x as usize] = 0;
                if dist2 {
                    for &w in &s.touched {
                        s.cnt[w as usize] = 0;
                    }
                    s.touched.clear();
                }
            }
            Mode::Edge => {
                let (u, v) = g.edges()[row];
                let t = ctx.table.get(g, &[u, v]);
                out[self.lower.single] = 1;
                out[self.lower.path_end] = (g.degree(u) as u64 - 1 - t) + (g.degree(v) as u64 - 1 - t);
                out[self.lower.triangle] = t;

                sub[0] = u;
                sub[1] = v;
                s.adj[u as usize] |= ROOT;
                s.adj[v as usize] |= ROOT;
                let mut ext = std::mem::take(&mut s.ext[2]);
                ext.clear();
                ext.extend(g.neighbors(u).iter().copied().filter(|&a| a != v));
                for &a in g.neighbors(u) {
                    s.adj[a as usize] |= 1;
                }
                ext.extend(g.neighbors(v).iter().copied().filter(|&b| s.adj[b as usize] == 0));
                for &b in g.neighbors(v) {
                    s.adj[b as usize] |= 2;
                }
                s.ext[2] = ext;
                self.expand(ctx, s, &mut sub, 2, 1);
                for &w in g.neighbors(u).iter().chain(g.neighbors(v)) {
                    s.adj[w as usize] = 0;
                }

                if let Some(dist2) = ctx.dist2 {
                    self.add_edge_dist2(g, dist2, s, u, v, row)?;
                }
            }
        }
        match s.error.take() {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    /// Right-hand sides of every equation, before solving:
    /// `result[row][s - 4][equation]` for the system on `s` nodes.
    /// Single-threaded; meant for checking systems on small hosts.
    pub fn right_hand_sides(&self, g: &Graph) -> Result<Vec<Vec<Vec<i64>>>, EngineError> {
        let table = CommonNeighborTable::build(g, self.k, usize::MAX)?;
        let cliques = count_cliques(g, self.k, self.mode);
        let dist2 = (self.mode == Mode::Edge).then(|| distance_two_sums(g));
        let ctx = Ctx { g, table: &table, cliques: &cliques, dist2: dist2.as_deref() };
        let rows = match self.mode {
            Mode::Node => g.node_count(),
            Mode::Edge => g.edge_count(),
        };
        let mut s = Scratch::new(g.node_count(), &self.systems);
        let mut out = vec![0; self.columns()];
        (0..rows)
            .map(|row| {
                self.fill_rhs(&ctx, &mut s, row, &mut out)?;
                Ok(s.rhs.clone())
            })
            .collect()
    }

    /// Enumerates connected supersets of `sub[..len]` (ESU with the row's
    /// own nodes as the root), each exactly once.
    fn expand(&self, ctx: &Ctx, s: &mut Scratch, sub: &mut [NodeId; MAX_NODES], len: usize, code: u64) {
        let g = ctx.g;
        let ext = std::mem::take(&mut s.ext[len]);
        for (i, &w) in ext.iter().enumerate() {
            // bit i of adj marks adjacency to sub[i]; codes put sub[0] first
            let mask = s.adj[w as usize] & ((1u8 << len) - 1);
            let code = code << len | u64::from(mask.reverse_bits() >> (8 - len));
            sub[len] = w;
            let size = len + 1;
            s.subgraphs[size] += 1;
            self.visit(ctx, s, &sub[..size], code);
            if size + 1 < self.k {
                let mut next = std::mem::take(&mut s.ext[size]);
                next.clear();
                next.extend_from_slice(&ext[i + 1..]);
                next.extend(g.neighbors(w).iter().copied().filter(|&u| s.adj[u as usize] == 0));
                s.ext[size] = next;
                let bit = 1u8 << len;
                for &u in g.neighbors(w) {
                    s.adj[u as usize] |= bit;
                }
                self.expand(ctx, s, sub, size, code);
                for &u in g.neighbors(w) {
                    s.adj[u as usize] &= !bit;
                }
            }
        }
        s.ext[len] = ext;
    }

    fn visit(&self, ctx: &Ctx, s: &mut Scratch, sub: &[NodeId], code: u64) {
        let Some(idx) = self.compiled.iter().position(|c| c.size == sub.len()) else {
            return;
        };
        let mut set = [0 as NodeId; MAX_NODES];
        for term in &self.compiled[idx].by_code[code as usize] {
            let count = match term.kind {
                TermKind::Table => {
                    let mut len = 0;
                    for p in 0..sub.len() {
                        if term.positions >> p & 1 == 1 {
                            set[len] = sub[p];
                            len += 1;
                        }
                    }
                    ctx.table.get(ctx.g, &set[..len])
                }
                TermKind::Dist2 => match self.mode {
                    Mode::Node => {
                        let p = (term.positions & !1).trailing_zeros() as usize;
                        s.cnt[sub[p] as usize] as u64
                    }
                    Mode::Edge => continue,
                },
            };
            let correction = term.correction as u64;
            if count < correction {
                s.error.get_or_insert_with(|| EngineError::MissingTableEntry {
                    row: sub[0] as usize,
                    orbit: self.systems[idx].equations[term.eq as usize].target,
                    nodes: (0..sub.len()).filter(|&p| term.positions >> p & 1 == 1).map(|p| sub[p]).collect(),
                    count,
                    correction: term.correction,
                });
                continue;
            }
            let slot = &mut s.rhs[idx][term.eq as usize];
            *slot += (count - correction) as i64;
        }
    }

    /// Adds the distance-two pair terms of the 3-node patterns around edge
    /// `(u, v)`, from the per-arc sums.
    fn add_edge_dist2(&self, g: &Graph, dist2: &[(u64, u64)], s: &mut Scratch, u: NodeId, v: NodeId, row: usize) -> Result<(), EngineError> {
        let arc = |a: NodeId, b: NodeId| {
            let i = g.neighbors(a).binary_search(&b).expect("arc of an edge");
            dist2[g.adjacency_offset(a) + i]
        };
        for (idx, c) in self.compiled.iter().enumerate() {
            for term in c.by_code.iter().flatten().filter(|t| t.kind == TermKind::Dist2) {
                // the pair is {u, w} with w adjacent to v only, or {v, w}
                let (sum, paths) = if term.positions & 1 == 1 { arc(u, v) } else { arc(v, u) };
                let value = sum as i128 - term.correction as i128 * paths as i128;
                if value < 0 {
                    return Err(EngineError::MissingTableEntry {
                        row,
                        orbit: self.systems[idx].equations[term.eq as usize].target,
                        nodes: vec![u, v],
                        count: sum,
                        correction: term.correction,
                    });
                }
                let slot = &mut s.rhs[idx][term.eq as usize];
                *slot = slot.checked_add(value as i64).ok_or(EngineError::Overflow { row })?;
            }
        }
        Ok(())
    }
}

struct Ctx<'a> {
    g: &'a Graph,
    table: &'a CommonNeighborTable,
    cliques: &'a CliqueCounts,
    dist2: Option<&'a [(u64, u64)]>,
}

struct Scratch {
    /// Bit `i` set when the node is adjacent to `sub[i]`; [`ROOT`] marks
    /// the row's own nodes. Zero means outside the closed neighbourhood.
    adj: Vec<u8>,
    /// `c(x, w)` around the current node row.
    cnt: Vec<u32>,
    touched: Vec<NodeId>,
    ext: Vec<Vec<NodeId>>,
    rhs: Vec<Vec<i64>>,
    subgraphs: [u64; MAX_NODES + 1],
    error: Option<EngineError>,
}

impl Scratch {
    fn new(n: usize, systems: &[EquationSystem]) -> Self {
        Scratch {
            adj: vec![0; n],
            cnt: vec![0; n],
            touched: Vec::new(),
            ext: vec![Vec::new(); MAX_NODES + 1],
            rhs: systems.iter().map(|s| vec![0; s.equations.len()]).collect(),
            subgraphs: [0; MAX_NODES + 1],
            error: None,
        }
    }
}

/// For every arc `a -> b`: the sum of `c(a, w)` over `w ∈ N(b) \ N[a]`, and
/// the number of such `w`. Indexed like the adjacency array.
fn distance_two_sums(g: &Graph) -> Vec<(u64, u64)> {
    let n = g.node_count();
    let per_node: Vec<Vec<(u64, u64)>> = (0..n as NodeId)
        .into_par_iter()
        .map_init(
            || (vec![0u32; n], vec![false; n], Vec::new()),
            |(cnt, near, touched), a| {
                for &m in g.neighbors(a) {
                    near[m as usize] = true;
                    for &w in g.neighbors(m) {
                        if w != a {
                            if cnt[w as usize] == 0 {
                                touched.push(w);
                            }
                            cnt[w as usize] += 1;
                        }
                    }
                }
                let out = g
                    .neighbors(a)
                    .iter()
                    .map(|&b| {
                        g.neighbors(b)
                            .iter()
                            .filter(|&&w| w != a && !near[w as usize])
                            .fold((0u64, 0u64), |(s, c), &w| (s + cnt[w as usize] as u64, c + 1))
                    })
                    .collect();
                for &m in g.neighbors(a) {
                    near[m as usize] = false;
                }
                for &w in touched.iter() {
                    cnt[w as usize] = 0;
                }
                touched.clear();
                out
            },
        )
        .collect();
    per_node.into_iter().flatten().collect()
}

/// Counts orbits with default settings.
pub fn count_orbits(g: &Graph, k: usize, mode: Mode) -> Result<OrbitCountMatrix, EngineError> {
    Ok(OrbitCounter::new(k, mode)?.count(g, &EngineConfig::default())?.matrix)
}
