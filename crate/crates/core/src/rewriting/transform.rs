use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::LabelSet;
use crate::attr::{compose_attr, AttrGraph, AttrMorphism};
use crate::constructions::{pushout_along_neutral, pushout_complement};
use crate::error::Result;
use crate::graph::Element;

use super::matching::Match;
use super::rule::{Span, WeakSpan};

/// A direct transformation `G ⇒ H` of a host by a weak span at a match:
/// a pushout complement on the left, then a pushout of `r` along `k ∘ i`.
#[derive(Debug, Clone)]
pub struct DirectTransformation {
    pub matching: Match,
    /// `D`.
    pub context: Arc<AttrGraph>,
    /// `k: K → D`.
    pub kept_to_context: AttrMorphism,
    /// `f: D → G`, neutral.
    pub context_to_host: AttrMorphism,
    /// Labels removed from each matched element that survives.
    pub deletion_sets: BTreeMap<Element, LabelSet>,
    /// `H`.
    pub result: Arc<AttrGraph>,
    /// `g: D → H`, neutral.
    pub context_to_result: AttrMorphism,
    /// `n: R → H`.
    pub rhs_to_result: AttrMorphism,
}

impl DirectTransformation {
    pub fn rule(&self) -> &Arc<WeakSpan> {
        self.matching.rule()
    }

    pub fn host(&self) -> &Arc<AttrGraph> {
        self.matching.host()
    }

    /// `k ∘ i: I → D`.
    pub fn interface_to_context(&self) -> Result<AttrMorphism> {
        compose_attr(&self.kept_to_context, self.rule().i())
    }
}

/// Applies the rule of `m` at `m`. Fails when the gluing condition does.
pub fn apply_direct(m: &Match) -> Result<DirectTransformation> {
    let rule = m.rule();
    let c = pushout_complement(rule.l(), m.morphism())?;
    let ki = compose_attr(&c.kept_to_complement, rule.i())?;
    let po = pushout_along_neutral(rule.r(), &ki)?;
    Ok(DirectTransformation {
        matching: m.clone(),
        context: c.complement,
        kept_to_context: c.kept_to_complement,
        context_to_host: c.complement_to_host,
        deletion_sets: c.deletion_sets,
        result: po.apex,
        context_to_result: po.from_other_side,
        rhs_to_result: po.from_neutral_side,
    })
}

/// The span `L ← K → R′` obtained by pushing `r` out along `i`, together
/// with `i′: R → R′`.
#[derive(Debug, Clone)]
pub struct AssociatedSpan {
    pub span: Span,
    pub rhs_to_extended: AttrMorphism,
}

pub fn associated_span(rule: &WeakSpan) -> Result<AssociatedSpan> {
    let po = pushout_along_neutral(rule.r(), rule.i())?;
    Ok(AssociatedSpan {
        span: Span {
            name: rule.name().to_string(),
            l: rule.l().clone(),
            r: po.from_other_side,
        },
        rhs_to_extended: po.from_neutral_side,
    })
}

/// Outcome of a classical double-pushout step.
#[derive(Debug, Clone)]
pub struct SpanResult {
    pub context: Arc<AttrGraph>,
    pub kept_to_context: AttrMorphism,
    pub context_to_host: AttrMorphism,
    pub result: Arc<AttrGraph>,
    pub context_to_result: AttrMorphism,
    pub rhs_to_result: AttrMorphism,
}

/// Double-pushout rewriting with a span at a match `m: L → G`.
pub fn apply_span_dpo(span: &Span, m: &AttrMorphism) -> Result<SpanResult> {
    let c = pushout_complement(&span.l, m)?;
    let po = pushout_along_neutral(&span.r, &c.kept_to_complement)?;
    Ok(SpanResult {
        context: c.complement,
        kept_to_context: c.kept_to_complement,
        context_to_host: c.complement_to_host,
        result: po.apex,
        context_to_result: po.from_other_side,
        rhs_to_result: po.from_neutral_side,
    })
}
