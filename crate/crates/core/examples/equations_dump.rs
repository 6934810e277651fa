//! Prints the orbit equations for k = 4 and k = 5 in both modes.

use graphlet_orbits::atlas::Numbering;
use graphlet_orbits::equations::{EquationSystem, Mode};

fn main() {
    for mode in [Mode::Node, Mode::Edge] {
        for k in [4, 5] {
            let system = EquationSystem::new(k, mode).expect("systems exist for k = 4, 5");
            println!("# {mode} orbits, k = {k}: {} equations", system.equations.len());
            print!("{}", system.dump(Numbering::Przulj));
        }
    }
}
