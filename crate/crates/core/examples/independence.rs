//! Coherence and independence of the birth transitions at generations 0
//! and 1, and what that means for applying them one after another.
//!
//!     cargo run --example independence

use wdpo::hex::{ca_oracle, encode_grid, huw_rules, HexGridSpec};
use wdpo::rewriting::{apply_sequentially, check_parallel_independent, coherent_set_check, pct};
use wdpo::run::{all_matches, transformations};
use wdpo::Error;

fn main() -> wdpo::Result<()> {
    let spec = HexGridSpec::origin(4);
    let oracle = ca_oracle(&spec, 2);
    let rules = huw_rules()?;
    for generation in 0..2 {
        let host = encode_grid(&spec, &oracle[generation])?;
        let (gammas, _) = transformations(&all_matches(&rules, &host)?)?;
        coherent_set_check(&gammas)?;
        let mut independent = 0;
        for a in 0..gammas.len() {
            for b in a + 1..gammas.len() {
                if check_parallel_independent(&gammas[a], &gammas[b])?.is_some() {
                    independent += 1;
                }
            }
        }
        let p = gammas.len();
        println!(
            "generation {generation}: {p} transitions, coherent, {independent}/{} pairs independent",
            p * (p - 1) / 2
        );
        let parallel = pct(&gammas)?;
        let order: Vec<usize> = (0..p).rev().collect();
        match apply_sequentially(&gammas, &order) {
            Ok(steps) => println!(
                "  sequential application gives the same graph: {}",
                *steps.last().unwrap().result == *parallel.result
            ),
            Err(Error::NotSequential { index, detail }) => {
                println!("  no sequential order: transition {index} {detail}")
            }
            Err(e) => return Err(e),
        }
    }
    Ok(())
}
