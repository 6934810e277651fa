//! Graphlet degree vectors of a small graph, and the most similar node pair.
//!
//! Run with `cargo run --example count_node_orbits [graph.txt]`; without a
//! file the Petersen graph with one extra chord is used.

use graphlet_orbits::engine::count_orbits;
use graphlet_orbits::equations::Mode;
use graphlet_orbits::graph::Graph;

const DEMO: &str = "10 16
0 1
1 2
2 3
3 4
4 0
0 5
1 6
2 7
3 8
4 9
5 7
7 9
9 6
6 8
8 5
0 2
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g: Graph = match std::env::args().nth(1) {
        Some(path) => Graph::load(std::io::BufReader::new(std::fs::File::open(path)?))?,
        None => DEMO.parse()?,
    };
    let m = count_orbits(&g, 5, Mode::Node)?;

    println!("node  degree  triangles  C4  K4  P5-centre  K5");
    for v in 0..m.rows() {
        let at = |label| m.get(v, label).unwrap_or(0);
        println!("{v:>4}  {:>6}  {:>9}  {:>2}  {:>2}  {:>9}  {:>2}", at(0), at(3), at(8), at(14), at(17), at(72));
    }

    // signature distance on log-scaled vectors
    let sig = |v: usize| m.row(v).iter().map(|&c| ((c + 1) as f64).ln()).collect::<Vec<_>>();
    let mut best = (f64::MAX, 0, 0);
    for a in 0..m.rows() {
        for b in a + 1..m.rows() {
            let d: f64 = sig(a).iter().zip(sig(b)).map(|(x, y)| (x - y).abs()).sum();
            if d < best.0 {
                best = (d, a, b);
            }
        }
    }
    println!("closest signatures: nodes {} and {} (distance {:.3})", best.1, best.2, best.0);
    Ok(())
}
