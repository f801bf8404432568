//! Iterates the two Fibonacci rules with parallel coherent steps.
//!
//!     cargo run --example fibonacci

use wdpo::io::fibonacci_system;
use wdpo::run::{cmd_run, Mode};

fn main() -> wdpo::Result<()> {
    let system = fibonacci_system();
    let host = system.require_host()?.clone();
    for rule in &system.rules {
        println!("{rule}\n");
    }
    let out = cmd_run(&system.rules, &host, 10, Mode::Pct)?;
    for (n, g) in out.graphs.iter().enumerate() {
        println!(
            "step {n:2}: x = {:?}, y = {:?}",
            g.node_label("x"),
            g.node_label("y")
        );
    }
    // Each step has two matches that are coherent but not independent.
    let r = &out.reports[0];
    let c = r.coherence.as_ref().unwrap();
    println!(
        "\nfirst step: {} transformations, {}/{} pairs independent, D' has {} elements",
        c.transformations,
        c.independent_pairs,
        c.pairs,
        r.context_elements.unwrap()
    );
    Ok(())
}
