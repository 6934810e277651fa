//! Scaling runs on Erdős–Rényi hosts, reported as CSV.

use std::collections::BTreeMap;
use std::io::{self, Write};

use thiserror::Error;

use crate::engine::{EngineConfig, EngineError, OrbitCounter, StageCounters};
use crate::equations::Mode;
use crate::graph::{generate_er_graph, generate_gnp_graph, Graph, GraphError};

pub const CSV_HEADER: &str =
    "n,m,seed,k,mode,t_table_ms,t_clique_ms,t_rows_ms,t_total_ms,subgraphs_k1,subgraphs_k2,clique_visits,table_entries";

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// How a host's size is given.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Density {
    Edges(usize),
    Probability(f64),
}

#[derive(Debug, Clone)]
pub struct BenchSpec {
    pub nodes: Vec<usize>,
    pub densities: Vec<Density>,
    pub seeds: Vec<u64>,
    pub ks: Vec<usize>,
    pub modes: Vec<Mode>,
    pub threads: usize,
    /// Configurations whose [`estimate_work`] exceeds this are skipped.
    pub max_work: Option<f64>,
}

impl Default for BenchSpec {
    fn default() -> Self {
        BenchSpec {
            nodes: vec![1000],
            densities: [25_000, 50_000, 100_000, 200_000].map(Density::Edges).to_vec(),
            seeds: vec![1],
            ks: vec![4],
            modes: vec![Mode::Node, Mode::Edge],
            threads: 0,
            max_work: None,
        }
    }
}

/// One run of the engine.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub k: usize,
    pub mode: Mode,
    pub t_table_ms: f64,
    pub t_clique_ms: f64,
    pub t_rows_ms: f64,
    pub t_total_ms: f64,
    /// Connected sets of `k - 1` nodes enumerated around rows.
    pub subgraphs_k1: u64,
    /// Same for `k - 2` nodes.
    pub subgraphs_k2: u64,
    pub clique_visits: u64,
    pub table_entries: u64,
}

impl BenchRecord {
    pub fn new(n: usize, m: usize, seed: u64, k: usize, mode: Mode, c: &StageCounters) -> Self {
        let ms = |d: std::time::Duration| d.as_secs_f64() * 1e3;
        BenchRecord {
            n,
            m,
            seed,
            k,
            mode,
            t_table_ms: ms(c.t_table),
            t_clique_ms: ms(c.t_cliques),
            t_rows_ms: ms(c.t_rows),
            t_total_ms: ms(c.t_total),
            subgraphs_k1: c.subgraphs_of_size(k - 1),
            subgraphs_k2: c.subgraphs_of_size(k - 2),
            clique_visits: c.clique_visits,
            table_entries: c.table_entries,
        }
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{:.3},{:.3},{:.3},{:.3},{},{},{},{}",
            self.n,
            self.m,
            self.seed,
            self.k,
            self.mode,
            self.t_table_ms,
            self.t_clique_ms,
            self.t_rows_ms,
            self.t_total_ms,
            self.subgraphs_k1,
            self.subgraphs_k2,
            self.clique_visits,
            self.table_entries
        )
    }
}

/// A configuration left out by the work limit.
#[derive(Debug, Clone, PartialEq)]
pub struct Skipped {
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub k: usize,
    pub mode: Mode,
    pub work: f64,
}

/// Log-log slope of `subgraphs_k1` against `m` for one `(n, k, mode)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeFit {
    pub n: usize,
    pub k: usize,
    pub mode: Mode,
    /// Distinct edge counts in the fit.
    pub points: usize,
    pub slope: Option<f64>,
}

#[derive(Debug, Clone, Default)]
pub struct BenchReport {
    pub records: Vec<BenchRecord>,
    pub skipped: Vec<Skipped>,
    pub slopes: Vec<SlopeFit>,
}

/// Expected enumeration cost on `G(n, m)`: `n * d^(k-2)` with `d = 2m/n`.
pub fn estimate_work(n: usize, m: usize, k: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let d = 2.0 * m as f64 / n as f64;
    n as f64 * d.powi(k as i32 - 2)
}

/// Least-squares slope of `ln y` on `ln x`; `None` with fewer than two
/// distinct positive `x`.
pub fn fit_slope(points: &[(f64, f64)]) -> Option<f64> {
    let logs: Vec<(f64, f64)> =
        points.iter().filter(|(x, y)| *x > 0.0 && *y > 0.0).map(|(x, y)| (x.ln(), y.ln())).collect();
    let len = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / len;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / len;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (logs.len() >= 2 && sxx > 1e-12).then(|| sxy / sxx)
}

/// Fits one slope per `(n, k, mode)` over the mean counter at each `m`.
pub fn fit_slopes(records: &[BenchRecord]) -> Vec<SlopeFit> {
    let mut groups: BTreeMap<(usize, usize, String), BTreeMap<usize, Vec<u64>>> = BTreeMap::new();
    let mut modes = BTreeMap::new();
    for r in records {
        let key = (r.n, r.k, r.mode.to_string());
        modes.insert(key.clone(), r.mode);
        groups.entry(key).or_default().entry(r.m).or_default().push(r.subgraphs_k1);
    }
    groups
        .into_iter()
        .map(|(key, by_m)| {
            let points: Vec<(f64, f64)> = by_m
                .iter()
                .map(|(&m, v)| (m as f64, v.iter().sum::<u64>() as f64 / v.len() as f64))
                .collect();
            SlopeFit { n: key.0, k: key.1, mode: modes[&key], points: points.len(), slope: fit_slope(&points) }
        })
        .collect()
}

fn host(n: usize, density: Density, seed: u64) -> Result<Graph, GraphError> {
    match density {
        Density::Edges(m) => generate_er_graph(n, m, seed),
        Density::Probability(p) => Ok(generate_gnp_graph(n, p, seed)),
    }
}

/// Runs every configuration, streaming CSV rows to `out` as they finish,
/// then appends skipped configurations and slopes as `#` comment lines.
pub fn run_bench(spec: &BenchSpec, mut out: impl Write) -> Result<BenchReport, BenchError> {
    let counters = spec
        .ks
        .iter()
        .flat_map(|&k| spec.modes.iter().map(move |&mode| (k, mode)))
        .map(|(k, mode)| OrbitCounter::new(k, mode))
        .collect::<Result<Vec<_>, _>>()?;
    let config = EngineConfig { threads: spec.threads, ..Default::default() };
    let mut report = BenchReport::default();
    writeln!(out, "{CSV_HEADER}")?;

    for &n in &spec.nodes {
        for &density in &spec.densities {
            for &seed in &spec.seeds {
                let g = host(n, density, seed)?;
                let m = g.edge_count();
                for c in &counters {
                    let work = estimate_work(n, m, c.k());
                    if spec.max_work.is_some_and(|limit| work > limit) {
                        report.skipped.push(Skipped { n, m, seed, k: c.k(), mode: c.mode(), work });
                        continue;
                    }
                    let run = c.count(&g, &config)?;
                    let record = BenchRecord::new(n, m, seed, c.k(), c.mode(), &run.counters);
                    writeln!(out, "{}", record.csv_line())?;
                    out.flush()?;
                    report.records.push(record);
                }
            }
        }
    }

    for s in &report.skipped {
        writeln!(
            out,
            "# skipped n={} m={} seed={} k={} mode={}: estimated work {:.2e}",
            s.n, s.m, s.seed, s.k, s.mode, s.work
        )?;
    }
    report.slopes = fit_slopes(&report.records);
    for f in &report.slopes {
        match f.slope {
            Some(s) => writeln!(out, "# slope n={} k={} mode={}: {s:.3} over {} edge counts", f.n, f.k, f.mode, f.points)?,
            None => writeln!(out, "# slope n={} k={} mode={}: needs two edge counts", f.n, f.k, f.mode)?,
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_a_power_law() {
        let pts: Vec<_> = [1.0, 2.0, 4.0, 8.0].iter().map(|&x: &f64| (x, 3.0 * x.powi(3))).collect();
        assert!((fit_slope(&pts).unwrap() - 3.0).abs() < 1e-9);
        assert_eq!(fit_slope(&[(2.0, 1.0)]), None);
        assert_eq!(fit_slope(&[(2.0, 1.0), (2.0, 5.0)]), None);
    }

    #[test]
    fn small_run() {
        let spec = BenchSpec {
            nodes: vec![60],
            densities: vec![Density::Edges(120), Density::Edges(240), Density::Probability(0.2)],
            seeds: vec![1, 2],
            ks: vec![4],
            modes: vec![Mode::Node, Mode::Edge],
            threads: 1,
            max_work: None,
        };
        let mut buf = Vec::new();
        let report = run_bench(&spec, &mut buf).unwrap();
        assert_eq!(report.records.len(), 12);
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 13);
        assert_eq!(report.slopes.len(), 2);
        assert!(report.slopes.iter().all(|f| f.slope.is_some()));

        // counters do not depend on timing
        let again = run_bench(&spec, io::sink()).unwrap();
        for (a, b) in report.records.iter().zip(&again.records) {
            assert_eq!((a.subgraphs_k1, a.subgraphs_k2, a.clique_visits), (b.subgraphs_k1, b.subgraphs_k2, b.clique_visits));
        }
    }

    #[test]
    fn work_limit_skips() {
        let spec = BenchSpec {
            nodes: vec![50],
            densities: vec![Density::Edges(100), Density::Edges(400)],
            seeds: vec![3],
            ks: vec![4],
            modes: vec![Mode::Node],
            threads: 1,
            max_work: Some(estimate_work(50, 200, 4)),
        };
        let report = run_bench(&spec, io::sink()).unwrap();
        assert_eq!(report.records.len(), 1);
        assert_eq!(report.skipped.len(), 1);
        assert_eq!(report.skipped[0].m, 400);
    }
}
