//! The `orbits` command line: count, equations, verify, bench.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::atlas::Numbering;
use crate::bench::{run_bench, BenchSpec, Density};
use crate::engine::{EngineConfig, EngineError, OrbitCounter};
use crate::equations::{EquationSystem, Mode};
use crate::graph::Graph;
use crate::oracle::{brute_force_orbits_with, random_corpus, structured_corpus, OracleError, DEFAULT_MAX_NODES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "orbits", version, about = "Graphlet orbit counts for every node or edge of a graph")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count orbits of a graph file and write one row per node or edge.
    Count {
        mode: ModeArg,
        #[arg(value_parser = clap::value_parser!(u8).range(4..=5))]
        k: u8,
        input: PathBuf,
        output: PathBuf,
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long, value_enum, default_value_t = NumberingArg::Przulj)]
        numbering: NumberingArg,
    },
    /// Print the equation system for graphlets on k nodes.
    Equations {
        mode: ModeArg,
        #[arg(value_parser = clap::value_parser!(u8).range(4..=7))]
        k: u8,
        #[arg(long, value_enum, default_value_t = NumberingArg::Przulj)]
        numbering: NumberingArg,
    },
    /// Compare the counter with brute force on a file or on generated graphs.
    Verify {
        mode: ModeArg,
        #[arg(value_parser = clap::value_parser!(u8).range(4..=5))]
        k: u8,
        input: Option<PathBuf>,
        /// Random hosts to generate when no file is given.
        #[arg(long, default_value_t = 100)]
        graphs: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Time the counter on random graphs and print CSV.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "1000")]
    nodes: Vec<usize>,
    /// Edge counts per host.
    #[arg(long, value_delimiter = ',', conflicts_with = "p")]
    edges: Vec<usize>,
    /// Edge probabilities, as an alternative to `--edges`.
    #[arg(long, value_delimiter = ',')]
    p: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    seeds: Vec<u64>,
    #[arg(long, value_delimiter = ',', default_value = "4", value_parser = clap::value_parser!(u8).range(4..=5))]
    k: Vec<u8>,
    #[arg(long, value_delimiter = ',', default_value = "node,edge")]
    modes: Vec<ModeArg>,
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Skip configurations whose estimated work n*(2m/n)^(k-2) exceeds this.
    #[arg(long)]
    max_work: Option<f64>,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Node,
    Edge,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Node => Mode::Node,
            ModeArg::Edge => Mode::Edge,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum NumberingArg {
    Przulj,
    Internal,
}

impl From<NumberingArg> for Numbering {
    fn from(n: NumberingArg) -> Numbering {
        match n {
            NumberingArg::Przulj => Numbering::Przulj,
            NumberingArg::Internal => Numbering::Internal,
        }
    }
}

/// A failed command, with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure { code: EXIT_INPUT, message: message.to_string() }
    }

    fn internal(message: impl ToString) -> Self {
        Failure { code: EXIT_INTERNAL, message: message.to_string() }
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        let code = match e {
            EngineError::UnsupportedK(_) => EXIT_USAGE,
            EngineError::TableTooLarge { .. } => EXIT_INPUT,
            _ => EXIT_INTERNAL,
        };
        Failure { code, message: e.to_string() }
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{shown}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{shown}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Count { mode, k, input, output, threads, numbering } => {
            count(mode.into(), k.into(), &input, &output, threads, numbering.into(), stderr)
        }
        Command::Equations { mode, k, numbering } => equations(mode.into(), k.into(), numbering.into(), stdout),
        Command::Verify { mode, k, input, graphs, seed, threads } => {
            verify(mode.into(), k.into(), input, graphs, seed, threads, stdout)
        }
        Command::Bench(args) => bench(args, stdout, stderr),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn load(path: &PathBuf) -> Result<Graph, Failure> {
    let file = File::open(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Graph::load(BufReader::new(file)).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn count(
    mode: Mode,
    k: usize,
    input: &PathBuf,
    output: &PathBuf,
    threads: usize,
    numbering: Numbering,
    stderr: &mut dyn Write,
) -> Result<(), Failure> {
    let g = load(input)?;
    let counter = OrbitCounter::new(k, mode)?;
    let run = counter.count(&g, &EngineConfig { threads, numbering, ..Default::default() })?;
    let file = File::create(output).map_err(|e| Failure::input(format!("{}: {e}", output.display())))?;
    let mut w = BufWriter::new(file);
    run.matrix
        .write_to(&mut w)
        .and_then(|_| w.flush())
        .map_err(|e| Failure::input(format!("{}: {e}", output.display())))?;
    let c = &run.counters;
    let _ = writeln!(
        stderr,
        "table {:.3} s, cliques {:.3} s, rows {:.3} s, total {:.3} s",
        c.t_table.as_secs_f64(),
        c.t_cliques.as_secs_f64(),
        c.t_rows.as_secs_f64(),
        c.t_total.as_secs_f64()
    );
    Ok(())
}

fn equations(mode: Mode, k: usize, numbering: Numbering, stdout: &mut dyn Write) -> Result<(), Failure> {
    let system = EquationSystem::new(k, mode).map_err(Failure::internal)?;
    write!(stdout, "{}", system.dump(numbering)).map_err(Failure::input)
}

fn verify(
    mode: Mode,
    k: usize,
    input: Option<PathBuf>,
    graphs: usize,
    seed: u64,
    threads: usize,
    stdout: &mut dyn Write,
) -> Result<(), Failure> {
    let corpus = match &input {
        Some(path) => vec![(path.display().to_string(), load(path)?)],
        None => {
            let mut c = random_corpus(graphs, seed);
            c.extend(structured_corpus());
            c
        }
    };
    let counter = OrbitCounter::new(k, mode)?;
    let config = EngineConfig { threads, ..Default::default() };
    for (name, g) in &corpus {
        let oracle = match brute_force_orbits_with(g, k, mode, Numbering::Przulj, DEFAULT_MAX_NODES) {
            Ok(r) => r.matrix,
            Err(e @ OracleError::TooLarge { .. }) => return Err(Failure::input(e)),
            Err(e) => return Err(Failure::internal(e)),
        };
        let engine = counter.count(g, &config)?.matrix;
        if let Some((row, label, a, b)) = engine.first_difference(&oracle) {
            let what = match mode {
                Mode::Node => "node",
                Mode::Edge => "edge",
            };
            return Err(Failure::internal(format!(
                "{name}: {what} {row}, orbit {label}: counter gives {a}, brute force gives {b}"
            )));
        }
    }
    writeln!(stdout, "ok: {} graphs agree ({mode} orbits, k = {k})", corpus.len()).map_err(Failure::input)
}

fn bench(args: BenchArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    let densities: Vec<Density> = if !args.p.is_empty() {
        if let Some(p) = args.p.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Failure { code: EXIT_USAGE, message: format!("edge probability {p} is outside [0, 1]") });
        }
        args.p.iter().map(|&p| Density::Probability(p)).collect()
    } else if !args.edges.is_empty() {
        args.edges.iter().map(|&m| Density::Edges(m)).collect()
    } else {
        BenchSpec::default().densities
    };
    let spec = BenchSpec {
        nodes: args.nodes,
        densities,
        seeds: args.seeds,
        ks: args.k.into_iter().map(usize::from).collect(),
        modes: args.modes.into_iter().map(Mode::from).collect(),
        threads: args.threads,
        max_work: args.max_work,
    };
    let report = match &args.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            run_bench(&spec, BufWriter::new(file))
        }
        None => run_bench(&spec, &mut *stdout),
    };
    let report = report.map_err(|e| match e {
        crate::bench::BenchError::Engine(e) => Failure::from(e),
        other => Failure::input(other),
    })?;
    let _ = writeln!(stderr, "{} runs, {} skipped", report.records.len(), report.skipped.len());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("orbits").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&["equations", "node", "3"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["count", "node", "9", "a", "b"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn equations_dump() {
        let (code, out, _) = run_str(&["equations", "node", "4"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().filter(|l| l.starts_with("orbit")).count(), 11);
        assert!(out.contains("2*o8 + 2*o12"));
    }

    #[test]
    fn missing_input() {
        let (code, _, err) = run_str(&["count", "node", "4", "/nonexistent/in.txt", "/tmp/out.txt"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("/nonexistent/in.txt"));
    }
}
