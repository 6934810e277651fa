//! Lists the graphlets on 2 to 5 nodes with their node and edge orbits.

use graphlet_orbits::atlas::{Atlas, Numbering};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let atlas = Atlas::build(5)?;
    for g in atlas.graphlets() {
        let mut orbits: Vec<usize> = g.node_orbits.iter().map(|&o| atlas.orbit_label(o, Numbering::Przulj)).collect();
        orbits.sort_unstable();
        orbits.dedup();
        let mut edge_orbits = g.edge_orbits.clone();
        edge_orbits.sort_unstable();
        edge_orbits.dedup();
        println!(
            "{:<4} {} nodes, {:>2} edges, |Aut| = {:>3}, node orbits {:?}, {} edge orbits",
            atlas.graphlet_name(g.id, Numbering::Przulj),
            g.node_count(),
            g.edge_count(),
            g.automorphisms.len(),
            orbits,
            edge_orbits.len()
        );
    }
    for k in 2..=5 {
        println!(
            "k = {k}: {} graphlets, {} node orbits, {} edge orbits",
            atlas.graphlets_of_size(k).count(),
            atlas.orbit_range(k).len(),
            atlas.edge_orbit_range(k).len()
        );
    }
    println!("total: {} graphlets, {} node orbits", atlas.graphlets().len(), atlas.orbits().len());
    Ok(())
}
