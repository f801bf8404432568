//! Collapses the two Fibonacci rules into the single span performing both
//! at once.
//!
//!     cargo run --example derived_span

use std::sync::Arc;
use wdpo::io::fibonacci_system;
use wdpo::rewriting::{apply_span_dpo, derive_span_from_pct, find_matches, WeakSpan};

fn main() -> wdpo::Result<()> {
    let system = fibonacci_system();
    let span = derive_span_from_pct(&system.rules)?;
    println!("rule {}", span.name);
    println!("  L: {}", span.lhs());
    println!("  K: {}", span.kept());
    println!("  R: {}", span.rhs());

    // Apply the derived span classically to the host.
    let host = system.require_host()?.clone();
    let as_rule = Arc::new(WeakSpan::span(
        span.name.clone(),
        span.l.clone(),
        span.r.clone(),
    )?);
    let m = find_matches(&as_rule, &host)?.remove(0);
    let step = apply_span_dpo(&span, m.morphism())?;
    println!("\n{host}  =>  {}", step.result);
    Ok(())
}
