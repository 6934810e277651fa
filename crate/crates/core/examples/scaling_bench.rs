//! Counter growth on G(n, m) as m doubles.
//!
//! `cargo run --release --example scaling_bench -- [n] [m1,m2,...] [k]`
//! prints CSV and the fitted log-log slope of the enumerated (k-1)-node sets.

use graphlet_orbits::bench::{run_bench, BenchSpec, Density};
use graphlet_orbits::equations::Mode;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n = args.next().map(|s| s.parse()).transpose()?.unwrap_or(500);
    let edges: Vec<usize> = match args.next() {
        Some(list) => list.split(',').map(str::parse).collect::<Result<_, _>>()?,
        None => vec![2_000, 4_000, 8_000, 16_000],
    };
    let k = args.next().map(|s| s.parse()).transpose()?.unwrap_or(4);

    let spec = BenchSpec {
        nodes: vec![n],
        densities: edges.into_iter().map(Density::Edges).collect(),
        ks: vec![k],
        modes: vec![Mode::Node, Mode::Edge],
        ..Default::default()
    };
    let report = run_bench(&spec, std::io::stdout())?;

    let expected = (k - 2) as f64;
    for fit in &report.slopes {
        if let Some(s) = fit.slope {
            println!("{} mode: slope {s:.2}, expected about {expected}", fit.mode);
        }
    }
    Ok(())
}
