//! Grows the Hex-Ulam-Warburton pattern from one live cell and checks it
//! against plain set iteration.
//!
//!     cargo run --release --example hex_ulam_warburton [generations]

use std::collections::BTreeSet;

use wdpo::hex::{ca_oracle, cmd_hexca, HexGridSpec};

fn draw(radius: i32, live: &BTreeSet<(i32, i32)>) {
    for r in -radius..=radius {
        let indent = r.unsigned_abs() as usize;
        let mut line = " ".repeat(indent);
        for q in -radius..=radius {
            if (q + r).abs() > radius {
                continue;
            }
            line.push(if live.contains(&(q, r)) { '#' } else { '.' });
            line.push(' ');
        }
        println!("{}", line.trim_end());
    }
}

fn main() -> wdpo::Result<()> {
    let generations: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(4);
    let spec = HexGridSpec::origin(generations + 1);
    let run = cmd_hexca(&spec, generations)?;
    let oracle = ca_oracle(&spec, generations);
    for (n, live) in run.live.iter().enumerate() {
        let matches: usize = run
            .reports
            .get(n)
            .map(|r| r.matches_per_rule.values().sum())
            .unwrap_or(0);
        let agree = if *live == oracle[n] { "ok" } else { "DIFFERS" };
        println!(
            "generation {n}: {} live ({agree}), {matches} births next",
            live.len()
        );
    }
    println!();
    draw(spec.radius as i32, run.live.last().unwrap());
    Ok(())
}
