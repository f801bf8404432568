//! Weak spans, matches, direct transformations and parallel coherent
//! transformations.

mod matching;
mod parallel;
mod rule;
mod transform;

pub use matching::{find_matches, Match};
pub use parallel::{
    apply_sequentially, check_parallel_coherent, check_parallel_independent, coherent_set_check,
    coproduct_match, count_independent_pairs, derive_span_from_pct, pct, residual_match,
    CoherenceWitness, ParallelStep, WitnessMatrix,
};
pub use rule::{coproduct_renaming, coproduct_rule, Span, WeakSpan};
pub use transform::{
    apply_direct, apply_span_dpo, associated_span, AssociatedSpan, DirectTransformation, SpanResult,
};

#[cfg(test)]
pub(crate) use rule::fixtures;
