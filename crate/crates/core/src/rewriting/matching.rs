use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraMorphism, LabelSet, Term, Value};
use crate::attr::{validate_attr_morphism, AttrGraph, AttrMorphism};
use crate::error::{Error, Result};
use crate::graph::{Element, GraphMorphism};
use crate::search::{canonical_key, MapKind, Search};

use super::rule::WeakSpan;

/// A morphism from the left-hand side of a rule into a host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Match {
    rule: Arc<WeakSpan>,
    morphism: AttrMorphism,
}

impl Match {
    /// Wraps a morphism `L → host`. The graph part need not be injective;
    /// applying the match then requires the identification condition.
    pub fn new(rule: Arc<WeakSpan>, morphism: AttrMorphism) -> Result<Self> {
        if !crate::attr::same_attr(morphism.source(), rule.lhs()) {
            return Err(Error::InvalidMorphism(format!(
                "match does not start at the left-hand side of `{}`",
                rule.name()
            )));
        }
        let report = validate_attr_morphism(&morphism);
        if !report.is_valid() {
            return Err(Error::InvalidMorphism(report.to_string()));
        }
        Ok(Match { rule, morphism })
    }

    pub fn rule(&self) -> &Arc<WeakSpan> {
        &self.rule
    }

    pub fn host(&self) -> &Arc<AttrGraph> {
        self.morphism.target()
    }

    pub fn morphism(&self) -> &AttrMorphism {
        &self.morphism
    }

    pub fn sigma(&self) -> &GraphMorphism {
        self.morphism.sigma()
    }

    pub fn alpha(&self) -> &AlgebraMorphism {
        self.morphism.alpha()
    }

    /// Value of each rule variable under this match.
    pub fn assignment(&self) -> BTreeMap<String, Value> {
        self.rule
            .variables()
            .into_iter()
            .map(|v| {
                let val = self
                    .alpha()
                    .apply(&Value::Term(Term::Var(v.clone())))
                    .expect("variables of the rule algebra are in the carrier");
                (v, val)
            })
            .collect()
    }
}

/// How values of the rule algebra reach the host algebra.
enum Evaluation {
    /// Same algebra, identity morphism.
    Identity,
    /// Out of a term algebra by assigning the variables.
    Assign(Vec<String>),
}

fn evaluation(rule: &WeakSpan, host: &AttrGraph) -> Result<Evaluation> {
    let (ra, ha) = (rule.algebra(), host.algebra());
    match &**ra {
        Algebra::Terms { vars, .. } => {
            if crate::algebra::same_algebra(ra, ha) && vars.is_empty() {
                Ok(Evaluation::Identity)
            } else {
                Ok(Evaluation::Assign(vars.iter().cloned().collect()))
            }
        }
        _ if crate::algebra::same_algebra(ra, ha) => Ok(Evaluation::Identity),
        _ => Err(Error::AlgebraMismatch(format!(
            "rule `{}` cannot be evaluated in the host algebra",
            rule.name()
        ))),
    }
}

/// Every match of `rule` in `host` with an injective graph part, in
/// canonical order: by node images, then edge images, then assignment.
///
/// Each variable takes its candidate values from the host labels at the
/// images of the elements where it appears on its own; every candidate
/// assignment satisfying the lax condition on all of `L` is a distinct
/// match.
pub fn find_matches(rule: &Arc<WeakSpan>, host: &Arc<AttrGraph>) -> Result<Vec<Match>> {
    let lhs = rule.lhs();
    if !lhs.graph().same_signature(host.graph()) {
        return Err(Error::SignatureMismatch);
    }
    let eval = evaluation(rule, host)?;
    // With an identity evaluation the lax condition is local and prunes the
    // search; otherwise only non-empty labels need a non-empty image.
    let fits = |e: Element, h: Element| -> bool {
        let want = lhs.label(&e);
        let have = host.label(&h);
        match eval {
            Evaluation::Identity => want.is_subset(have),
            Evaluation::Assign(_) => want.is_empty() || !have.is_empty(),
        }
    };
    let node_ok = |p: &str, h: &str| fits(Element::Node(p.into()), Element::Node(h.into()));
    let edge_ok = |p: &str, h: &str| fits(Element::Edge(p.into()), Element::Edge(h.into()));
    let mut found = Vec::new();
    Search {
        pattern: lhs.graph(),
        host: host.graph(),
        kind: MapKind::Injective,
        node_ok: &node_ok,
        edge_ok: &edge_ok,
    }
    .run(&mut |m| {
        found.push(m.clone());
        true
    });
    found.sort_by_cached_key(canonical_key);

    let mut out = Vec::new();
    for (nodes, edges) in found {
        let sigma = GraphMorphism::new(lhs.graph().clone(), host.graph().clone(), nodes, edges)?;
        let alphas = match &eval {
            Evaluation::Identity => vec![AlgebraMorphism::identity(host.algebra().clone())],
            Evaluation::Assign(vars) => assignments(rule, host, &sigma, vars)?,
        };
        for alpha in alphas {
            let m = AttrMorphism::from_parts(lhs.clone(), host.clone(), sigma.clone(), alpha);
            if lax_holds(&m)? {
                out.push(Match {
                    rule: rule.clone(),
                    morphism: m,
                });
            }
        }
    }
    Ok(out)
}

/// The lax condition, with evaluation errors (such as overflow) reported
/// rather than counted as violations.
fn lax_holds(m: &AttrMorphism) -> Result<bool> {
    for (e, label) in m.source().labels() {
        let image = crate::algebra::apply_to_labelset(m.alpha(), label)?;
        let target = m.target().label(&m.apply(e).unwrap());
        if !image.is_subset(target) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn assignments(
    rule: &WeakSpan,
    host: &Arc<AttrGraph>,
    sigma: &GraphMorphism,
    vars: &[String],
) -> Result<Vec<AlgebraMorphism>> {
    let mut candidates: Vec<LabelSet> = Vec::with_capacity(vars.len());
    for v in vars {
        let bare = Value::Term(Term::Var(v.clone()));
        let mut cand: Option<BTreeSet<Value>> = None;
        for (e, label) in rule.lhs().labels() {
            if label.contains(&bare) {
                let have = host.label(&sigma.apply(e).unwrap());
                cand = Some(match cand {
                    None => have.clone(),
                    Some(c) => c.intersection(have).cloned().collect(),
                });
            }
        }
        let cand = cand.unwrap_or_default();
        if cand.is_empty() {
            return Ok(Vec::new());
        }
        candidates.push(cand);
    }
    let mut out = Vec::new();
    let mut current = BTreeMap::new();
    product(vars, &candidates, 0, &mut current, &mut |assignment| {
        out.push(AlgebraMorphism::assignment(
            rule.algebra().clone(),
            host.algebra().clone(),
            assignment.clone(),
        ));
    });
    out.into_iter().collect()
}

fn product(
    vars: &[String],
    candidates: &[LabelSet],
    at: usize,
    current: &mut BTreeMap<String, Value>,
    emit: &mut dyn FnMut(&BTreeMap<String, Value>),
) {
    if at == vars.len() {
        emit(current);
        return;
    }
    for value in &candidates[at] {
        current.insert(vars[at].clone(), value.clone());
        product(vars, candidates, at + 1, current, emit);
    }
    current.remove(&vars[at]);
}
