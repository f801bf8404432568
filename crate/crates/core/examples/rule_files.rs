//! Loads a rule system from JSON, lists its matches, applies one and
//! writes the result as JSON and Graphviz.
//!
//!     cargo run --example rule_files [system.json]

use wdpo::dot::export_dot;
use wdpo::io::{graph_to_json, load_system, parse_system, FIBONACCI};
use wdpo::rewriting::apply_direct;
use wdpo::run::all_matches;

fn main() -> wdpo::Result<()> {
    let system = match std::env::args().nth(1) {
        Some(path) => load_system(path)?,
        None => parse_system(FIBONACCI, "fib.json")?,
    };
    let host = system.require_host()?.clone();
    println!("host: {host}");
    let matches = all_matches(&system.rules, &host)?;
    for (i, m) in matches.iter().enumerate() {
        println!(
            "match {i}: rule {} with {:?}",
            m.rule().name(),
            m.assignment()
        );
    }
    let Some(first) = matches.first() else {
        println!("no matches");
        return Ok(());
    };
    let t = apply_direct(first)?;
    println!(
        "\nafter {}:\n{}",
        first.rule().name(),
        graph_to_json(&t.result)
    );
    println!("\n{}", export_dot(&t.result));
    Ok(())
}
