//! Drives the command line in-process: writes a C4 file, counts its orbits
//! and verifies the counter against brute force.

use graphlet_orbits::cli;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("orbits-cli-demo");
    std::fs::create_dir_all(&dir)?;
    let input = dir.join("c4.in");
    let output = dir.join("c4.out");
    std::fs::write(&input, "4 4\n0 1\n1 2\n2 3\n3 0\n")?;

    let (mut out, mut err) = (std::io::stdout(), std::io::stderr());
    let args = ["orbits", "count", "node", "4", input.to_str().unwrap(), output.to_str().unwrap()];
    let code = cli::run(args, &mut out, &mut err);
    println!("count exited with {code}:\n{}", std::fs::read_to_string(&output)?);

    let code = cli::run(["orbits", "verify", "edge", "5", input.to_str().unwrap()], &mut out, &mut err);
    println!("verify exited with {code}");
    Ok(())
}
