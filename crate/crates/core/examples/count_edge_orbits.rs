//! Edge orbit counts on a random graph, written in the output file format.

use graphlet_orbits::engine::{EngineConfig, OrbitCounter};
use graphlet_orbits::equations::Mode;
use graphlet_orbits::graph::generate_er_graph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = generate_er_graph(200, 1500, 42)?;
    let counter = OrbitCounter::new(4, Mode::Edge)?;
    let run = counter.count(&g, &EngineConfig::default())?;
    let m = &run.matrix;

    println!("{} edges x {} edge orbits", m.rows(), m.columns());
    println!("first five rows:");
    let mut buf = Vec::new();
    m.write_to(&mut buf)?;
    for (line, (u, v)) in String::from_utf8(buf)?.lines().zip(g.edges()).take(5) {
        println!("  {u:>3}-{v:<3} {line}");
    }

    // each triangle is seen from its three edges
    let tri_col = m.labels().iter().position(|&l| l == 2).expect("triangle edge orbit");
    let triangles: u64 = (0..m.rows()).map(|r| m.row(r)[tri_col]).sum::<u64>() / 3;
    println!("triangles: {triangles}");
    println!("stage times: {:?}", run.counters.t_total);
    Ok(())
}
