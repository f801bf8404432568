use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraMorphism, Term, Value};
use crate::attr::{compose_attr, same_attr, validate_attr_morphism, AttrGraph, AttrMorphism};
use crate::constructions::{
    colimit_of_neutrals, limit_of_neutrals, pushout_along_neutral, PushoutResult,
};
use crate::error::{Error, Result};
use crate::graph::{copair, Element, GraphMorphism};

use super::matching::Match;
use super::rule::{coproduct_renaming, Span, WeakSpan};
use super::transform::{apply_direct, DirectTransformation};

/// `j: I_b → D_a` with `f_a ∘ j = f_b ∘ k_b ∘ i_b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherenceWitness {
    pub j: AttrMorphism,
}

impl CoherenceWitness {
    /// Re-checks the commuting condition against the two transformations
    /// the witness was built for.
    pub fn commutes(
        &self,
        from: &DirectTransformation,
        into: &DirectTransformation,
    ) -> Result<bool> {
        let lhs = compose_attr(&into.context_to_host, &self.j)?;
        let rhs = compose_attr(&from.context_to_host, &from.interface_to_context()?)?;
        Ok(lhs == rhs)
    }
}

/// Inverse of the (injective) graph part of `D → G`.
fn preimages(into: &DirectTransformation) -> HashMap<Element, Element> {
    into.context_to_host
        .sigma()
        .preimages()
        .into_iter()
        .map(|(img, mut pre)| (img, pre.remove(0)))
        .collect()
}

/// Factors `to_host: X → G` through `D → G`. The inner error explains why
/// no factorisation exists.
fn lift(
    to_host: &AttrMorphism,
    into: &DirectTransformation,
    inverse: &HashMap<Element, Element>,
) -> Result<std::result::Result<AttrMorphism, String>> {
    let source = to_host.source();
    let mut nodes = BTreeMap::new();
    let mut edges = BTreeMap::new();
    for e in source.graph().elements() {
        let img = to_host.apply(&e).unwrap();
        let Some(pre) = inverse.get(&img) else {
            return Ok(Err(format!(
                "{img} is deleted by rule `{}`",
                into.rule().name()
            )));
        };
        match e {
            Element::Node(id) => nodes.insert(id, pre.id().to_string()),
            Element::Edge(id) => edges.insert(id, pre.id().to_string()),
        };
    }
    let sigma = GraphMorphism::new(
        source.graph().clone(),
        into.context.graph().clone(),
        nodes,
        edges,
    )?;
    let j = AttrMorphism::from_parts(
        source.clone(),
        into.context.clone(),
        sigma,
        to_host.alpha().clone(),
    );
    let report = validate_attr_morphism(&j);
    if let Some(v) = report.violations.first() {
        return Ok(Err(format!(
            "{} needs {:?} but rule `{}` leaves {:?} at {}",
            v.element,
            v.mapped_label,
            into.rule().name(),
            v.target_label,
            v.image
        )));
    }
    if !report.is_valid() {
        return Err(Error::Internal(report.to_string()));
    }
    Ok(Ok(j))
}

fn interface_to_host(t: &DirectTransformation) -> Result<AttrMorphism> {
    compose_attr(&t.context_to_host, &t.interface_to_context()?)
}

fn same_host(a: &DirectTransformation, b: &DirectTransformation) -> Result<()> {
    if same_attr(a.host(), b.host()) {
        Ok(())
    } else {
        Err(Error::HostMismatch)
    }
}

/// Witnesses `j₁: I₁ → D₂` and `j₂: I₂ → D₁`, if both exist.
pub fn check_parallel_coherent(
    first: &DirectTransformation,
    second: &DirectTransformation,
) -> Result<Option<(CoherenceWitness, CoherenceWitness)>> {
    same_host(first, second)?;
    let j1 = lift(&interface_to_host(first)?, second, &preimages(second))?;
    let j2 = lift(&interface_to_host(second)?, first, &preimages(first))?;
    Ok(match (j1, j2) {
        (Ok(j1), Ok(j2)) => Some((CoherenceWitness { j: j1 }, CoherenceWitness { j: j2 })),
        _ => None,
    })
}

/// Witnesses `j₁: L₁ → D₂` and `j₂: L₂ → D₁` with `f₂ ∘ j₁ = m₁` and
/// `f₁ ∘ j₂ = m₂`, if both exist.
pub fn check_parallel_independent(
    first: &DirectTransformation,
    second: &DirectTransformation,
) -> Result<Option<(AttrMorphism, AttrMorphism)>> {
    same_host(first, second)?;
    let j1 = lift(first.matching.morphism(), second, &preimages(second))?;
    let j2 = lift(second.matching.morphism(), first, &preimages(first))?;
    Ok(match (j1, j2) {
        (Ok(j1), Ok(j2)) => Some((j1, j2)),
        _ => None,
    })
}

/// Number of parallel-independent pairs in a family on one host.
pub fn count_independent_pairs(gammas: &[DirectTransformation]) -> Result<usize> {
    let inverses: Vec<_> = gammas.iter().map(preimages).collect();
    let mut n = 0;
    for a in 0..gammas.len() {
        for b in a + 1..gammas.len() {
            same_host(&gammas[a], &gammas[b])?;
            let j1 = lift(gammas[a].matching.morphism(), &gammas[b], &inverses[b])?;
            if j1.is_ok() && lift(gammas[b].matching.morphism(), &gammas[a], &inverses[a])?.is_ok()
            {
                n += 1;
            }
        }
    }
    Ok(n)
}

/// All witnesses of a coherent family: `get(c, a)` is `I_c → D_a`, with
/// `k_c ∘ i_c` on the diagonal.
#[derive(Debug, Clone)]
pub struct WitnessMatrix {
    entries: Vec<Vec<AttrMorphism>>,
}

impl WitnessMatrix {
    pub fn get(&self, from: usize, into: usize) -> &AttrMorphism {
        &self.entries[from][into]
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Checks every pair of the family for coherence. The error names the
/// first incoherent pair and why.
pub fn coherent_set_check(gammas: &[DirectTransformation]) -> Result<WitnessMatrix> {
    let first = gammas.first().ok_or(Error::EmptyLegs)?;
    for g in gammas {
        same_host(first, g)?;
    }
    let inverses: Vec<_> = gammas.iter().map(preimages).collect();
    let to_host: Vec<_> = gammas
        .iter()
        .map(interface_to_host)
        .collect::<Result<_>>()?;
    let p = gammas.len();
    let mut entries: Vec<Vec<Option<AttrMorphism>>> = vec![vec![None; p]; p];
    for c in 0..p {
        entries[c][c] = Some(gammas[c].interface_to_context()?);
    }
    for a in 0..p {
        for b in a + 1..p {
            for (from, into) in [(b, a), (a, b)] {
                match lift(&to_host[from], &gammas[into], &inverses[into])? {
                    Ok(j) => entries[from][into] = Some(j),
                    Err(detail) => return Err(Error::Incoherent { a, b, detail }),
                }
            }
        }
    }
    Ok(WitnessMatrix {
        entries: entries
            .into_iter()
            .map(|row| row.into_iter().map(Option::unwrap).collect())
            .collect(),
    })
}

/// A parallel coherent transformation of a host by a family of direct
/// transformations.
#[derive(Debug, Clone)]
pub struct ParallelStep {
    pub gammas: Vec<DirectTransformation>,
    pub witnesses: WitnessMatrix,
    /// `D′`, the limit of the `f_a`.
    pub common_context: Arc<AttrGraph>,
    /// `e_a: D′ → D_a`.
    pub context_legs: Vec<AttrMorphism>,
    /// `d_c: I_c → D′`.
    pub mediators: Vec<AttrMorphism>,
    /// `H′_a`, pushouts of `r_a` along `d_a`.
    pub partial_results: Vec<PushoutResult>,
    /// `H′`, the colimit of the `g′_a`.
    pub result: Arc<AttrGraph>,
    /// `h_a: H′_a → H′`.
    pub result_legs: Vec<AttrMorphism>,
}

impl ParallelStep {
    /// `D′ → G`.
    pub fn context_to_host(&self) -> Result<AttrMorphism> {
        compose_attr(&self.gammas[0].context_to_host, &self.context_legs[0])
    }

    /// `D′ → H′`.
    pub fn context_to_result(&self) -> Result<AttrMorphism> {
        compose_attr(
            &self.result_legs[0],
            &self.partial_results[0].from_other_side,
        )
    }
}

/// Runs the parallel coherent transformation of a coherent family.
pub fn pct(gammas: &[DirectTransformation]) -> Result<ParallelStep> {
    let witnesses = coherent_set_check(gammas)?;
    let fs: Vec<AttrMorphism> = gammas.iter().map(|g| g.context_to_host.clone()).collect();
    let limit = limit_of_neutrals(&fs)?;
    let (common, legs) = (limit.apex, limit.legs);

    let mut by_tuple: HashMap<Vec<Element>, Element> = HashMap::new();
    for x in common.graph().elements() {
        let key = legs.iter().map(|e| e.apply(&x).unwrap()).collect();
        by_tuple.insert(key, x);
    }
    let mut mediators = Vec::with_capacity(gammas.len());
    for (c, g) in gammas.iter().enumerate() {
        let interface = g.rule().interface();
        let mut nodes = BTreeMap::new();
        let mut edges = BTreeMap::new();
        for u in interface.graph().elements() {
            let key: Vec<Element> = (0..gammas.len())
                .map(|a| witnesses.get(c, a).apply(&u).unwrap())
                .collect();
            let x = by_tuple.get(&key).ok_or_else(|| {
                Error::Internal(format!(
                    "no element of the common context over {u} of transformation {c}"
                ))
            })?;
            match (&u, x) {
                (Element::Node(a), Element::Node(b)) => nodes.insert(a.clone(), b.clone()),
                (Element::Edge(a), Element::Edge(b)) => edges.insert(a.clone(), b.clone()),
                _ => return Err(Error::Internal("mediator mixes nodes and edges".into())),
            };
        }
        let d = AttrMorphism::from_maps(
            interface.clone(),
            common.clone(),
            nodes,
            edges,
            g.matching.alpha().clone(),
        )
        .map_err(|e| Error::Internal(format!("mediator {c}: {e}")))?;
        for (a, e) in legs.iter().enumerate() {
            if compose_attr(e, &d)? != *witnesses.get(c, a) {
                return Err(Error::Internal(format!(
                    "mediator {c} disagrees with witness into {a}"
                )));
            }
        }
        mediators.push(d);
    }

    let partial_results: Vec<PushoutResult> = gammas
        .iter()
        .zip(&mediators)
        .map(|(g, d)| pushout_along_neutral(g.rule().r(), d))
        .collect::<Result<_>>()?;
    let gs: Vec<AttrMorphism> = partial_results
        .iter()
        .map(|po| po.from_other_side.clone())
        .collect();
    let colimit = colimit_of_neutrals(&gs)?;
    Ok(ParallelStep {
        gammas: gammas.to_vec(),
        witnesses,
        common_context: common,
        context_legs: legs,
        mediators,
        partial_results,
        result: colimit.apex,
        result_legs: colimit.legs,
    })
}

/// Carries a match of the host of `step` over to its result, through the
/// context `D`. Absent when the match does not survive `step`.
pub fn residual_match(m: &Match, step: &DirectTransformation) -> Result<Option<Match>> {
    if !same_attr(m.host(), step.host()) {
        return Err(Error::HostMismatch);
    }
    match lift(m.morphism(), step, &preimages(step))? {
        Ok(j) => {
            let moved = compose_attr(&step.context_to_result, &j)?;
            Ok(Some(Match::new(m.rule().clone(), moved)?))
        }
        Err(_) => Ok(None),
    }
}

/// Applies the matches of `gammas` one after another in the given order,
/// carrying each pending match along every step taken. Returns the steps.
pub fn apply_sequentially(
    gammas: &[DirectTransformation],
    order: &[usize],
) -> Result<Vec<DirectTransformation>> {
    let mut pending: Vec<Option<Match>> = gammas.iter().map(|g| Some(g.matching.clone())).collect();
    let mut steps: Vec<DirectTransformation> = Vec::with_capacity(order.len());
    for (position, &idx) in order.iter().enumerate() {
        let Some(m) = pending.get_mut(idx).and_then(Option::take) else {
            return Err(Error::NotSequential {
                index: idx,
                detail: "index out of range or used twice".into(),
            });
        };
        let step = if position == 0 {
            gammas[idx].clone()
        } else {
            apply_direct(&m).map_err(|e| Error::NotSequential {
                index: idx,
                detail: e.to_string(),
            })?
        };
        for &later in &order[position + 1..] {
            let Some(next) = pending[later].take() else {
                continue;
            };
            match residual_match(&next, &step)? {
                Some(moved) => pending[later] = Some(moved),
                None => {
                    return Err(Error::NotSequential {
                        index: later,
                        detail: format!("its match does not survive rule `{}`", step.rule().name()),
                    })
                }
            }
        }
        steps.push(step);
    }
    Ok(steps)
}

/// The match `[m₁, m₂]` of the coproduct of the two rules.
pub fn coproduct_match(first: &Match, second: &Match, coproduct: &Arc<WeakSpan>) -> Result<Match> {
    if !same_attr(first.host(), second.host()) {
        return Err(Error::HostMismatch);
    }
    let sigma = copair(coproduct.lhs().graph(), first.sigma(), second.sigma())?;
    let host = first.host();
    let alpha = if let Algebra::Terms { .. } = &**coproduct.algebra() {
        let renaming = coproduct_renaming(first.rule(), second.rule());
        let read = |m: &Match, v: &str| m.alpha().apply(&Value::Term(Term::Var(v.to_string())));
        let mut map = BTreeMap::new();
        for v in first.rule().variables() {
            map.insert(v.clone(), read(first, &v)?);
        }
        for v in second.rule().variables() {
            map.insert(renaming[&v].clone(), read(second, &v)?);
        }
        AlgebraMorphism::assignment(coproduct.algebra().clone(), host.algebra().clone(), map)?
    } else {
        first.alpha().clone()
    };
    Match::new(
        coproduct.clone(),
        AttrMorphism::from_parts(coproduct.lhs().clone(), host.clone(), sigma, alpha),
    )
}

/// The single rule `L ← D′ → H′` performing the parallel transformation of
/// `L` by all given rules at their identity matches.
pub fn derive_span_from_pct(rules: &[Arc<WeakSpan>]) -> Result<Span> {
    let first = rules.first().ok_or(Error::EmptyLegs)?;
    let host = first.lhs().clone();
    let mut gammas = Vec::with_capacity(rules.len());
    for rule in rules {
        if !same_attr(rule.lhs(), &host) {
            return Err(Error::InvalidRule {
                rule: rule.name().to_string(),
                reason: format!("left-hand side differs from that of `{}`", first.name()),
            });
        }
        let id =
            AttrMorphism::identity(rule.lhs().clone()).rebase(rule.lhs().clone(), host.clone())?;
        gammas.push(apply_direct(&Match::new(rule.clone(), id)?)?);
    }
    let step = pct(&gammas)?;
    let name = rules.iter().map(|r| r.name()).collect::<Vec<_>>().join("|");
    Ok(Span {
        name,
        l: step.context_to_host()?,
        r: step.context_to_result()?,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::matching::find_matches;
    use super::super::rule::coproduct_rule;
    use super::*;
    use crate::attr::is_attr_isomorphic;
    use crate::graph::{Graph, Signature};

    fn gammas(host: &Arc<AttrGraph>) -> Vec<DirectTransformation> {
        [x_gets_y(), y_gets_sum()]
            .iter()
            .map(|r| apply_direct(&find_matches(r, host).unwrap().remove(0)).unwrap())
            .collect()
    }

    #[test]
    fn fibonacci_pair_is_coherent_not_independent() {
        let host = nat_pair(&[1], &[2]);
        let gs = gammas(&host);
        let (j1, j2) = check_parallel_coherent(&gs[0], &gs[1]).unwrap().unwrap();
        assert_eq!(j2.j.sigma().node("i"), Some("y"));
        assert_eq!(j1.j.sigma().node("i"), Some("x"));
        assert!(j1.commutes(&gs[0], &gs[1]).unwrap());
        assert!(j2.commutes(&gs[1], &gs[0]).unwrap());
        assert!(check_parallel_independent(&gs[0], &gs[1])
            .unwrap()
            .is_none());
    }

    #[test]
    fn every_transformation_is_coherent_with_itself() {
        let host = nat_pair(&[1], &[2]);
        for g in gammas(&host) {
            let (j, _) = check_parallel_coherent(&g, &g).unwrap().unwrap();
            assert_eq!(j.j, g.interface_to_context().unwrap());
        }
    }

    #[test]
    fn fibonacci_pct() {
        let host = nat_pair(&[1], &[2]);
        let step = pct(&gammas(&host)).unwrap();
        assert_eq!(step.common_context.as_ref(), nat_pair(&[], &[]).as_ref());
        assert_eq!(
            step.partial_results[0].apex.as_ref(),
            nat_pair(&[2], &[]).as_ref()
        );
        assert_eq!(
            step.partial_results[1].apex.as_ref(),
            nat_pair(&[], &[3]).as_ref()
        );
        assert_eq!(step.result.as_ref(), nat_pair(&[2], &[3]).as_ref());
        assert_eq!(step.witnesses.len(), 2);
    }

    #[test]
    fn singleton_pct_is_the_direct_transformation() {
        let host = nat_pair(&[1], &[2]);
        for g in gammas(&host) {
            let step = pct(std::slice::from_ref(&g)).unwrap();
            assert!(is_attr_isomorphic(&step.result, &g.result).is_some());
        }
    }

    #[test]
    fn pct_is_order_invariant() {
        let host = nat_pair(&[1], &[2]);
        let mut gs = gammas(&host);
        let a = pct(&gs).unwrap();
        gs.reverse();
        let b = pct(&gs).unwrap();
        assert!(is_attr_isomorphic(&a.result, &b.result).is_some());
    }

    #[test]
    fn derived_fibonacci_span() {
        let span = derive_span_from_pct(&[x_gets_y(), y_gets_sum()]).unwrap();
        let alg = x_gets_y().algebra().clone();
        assert_eq!(span.kept().as_ref(), term_pair(&alg, &[], &[]).as_ref());
        assert!(is_attr_isomorphic(span.rhs(), &term_pair(&alg, &["v"], &["u+v"])).is_some());
        assert_eq!(
            span.lhs().as_ref(),
            term_pair(&alg, &["u"], &["v"]).as_ref()
        );
    }

    fn enum_sig() -> Arc<Signature> {
        Signature::simple("place", "next")
    }

    /// A rule on a discrete graph over {a, b}: `lhs`, `kept`, `interface`
    /// and `rhs` give the label of each listed node.
    fn discrete(
        name: &str,
        lhs: &[(&str, &[&str])],
        kept: &[(&str, &[&str])],
        interface: &[(&str, &[&str])],
        rhs: &[(&str, &[&str])],
    ) -> Arc<WeakSpan> {
        let alg = Algebra::enumeration(["a", "b"]);
        let build = |nodes: &[(&str, &[&str])]| {
            let mut g = Graph::new(enum_sig());
            let mut labels = BTreeMap::new();
            for (id, l) in nodes {
                g.add_node(*id, "place").unwrap();
                labels.insert(
                    Element::Node(id.to_string()),
                    l.iter().map(|s| Value::Sym(s.to_string())).collect(),
                );
            }
            Arc::new(AttrGraph::new(Arc::new(g), alg.clone(), labels).unwrap())
        };
        let ids = |nodes: &[(&str, &[&str])]| {
            nodes
                .iter()
                .map(|(id, _)| (id.to_string(), id.to_string()))
                .collect()
        };
        let (l_, k_, i_, r_) = (build(lhs), build(kept), build(interface), build(rhs));
        let l = AttrMorphism::neutral(k_.clone(), l_, ids(kept), BTreeMap::new()).unwrap();
        let i = AttrMorphism::neutral(i_.clone(), k_, ids(interface), BTreeMap::new()).unwrap();
        let r = AttrMorphism::neutral(i_, r_, ids(interface), BTreeMap::new()).unwrap();
        Arc::new(WeakSpan::new(name, l, i, r).unwrap())
    }

    fn discrete_host(nodes: &[(&str, &[&str])]) -> Arc<AttrGraph> {
        let alg = Algebra::enumeration(["a", "b"]);
        let mut g = Graph::new(enum_sig());
        let mut labels = BTreeMap::new();
        for (id, l) in nodes {
            g.add_node(*id, "place").unwrap();
            labels.insert(
                Element::Node(id.to_string()),
                l.iter().map(|s| Value::Sym(s.to_string())).collect(),
            );
        }
        Arc::new(AttrGraph::new(Arc::new(g), alg, labels).unwrap())
    }

    #[test]
    fn mutual_deletion_is_incoherent() {
        // Each rule keeps one node in its interface and deletes the other.
        let host = discrete_host(&[("p", &[]), ("q", &[])]);
        let keep_p = discrete(
            "keep-p",
            &[("p", &[]), ("q", &[])],
            &[("p", &[])],
            &[("p", &[])],
            &[("p", &[])],
        );
        let keep_q = discrete(
            "keep-q",
            &[("p", &[]), ("q", &[])],
            &[("q", &[])],
            &[("q", &[])],
            &[("q", &[])],
        );
        let m1 = find_matches(&keep_p, &host).unwrap();
        let m2 = find_matches(&keep_q, &host).unwrap();
        let id_match = |ms: &[Match]| {
            ms.iter()
                .find(|m| m.sigma().node("p") == Some("p"))
                .unwrap()
                .clone()
        };
        let g1 = apply_direct(&id_match(&m1)).unwrap();
        let g2 = apply_direct(&id_match(&m2)).unwrap();
        assert!(check_parallel_coherent(&g1, &g2).unwrap().is_none());
        let err = coherent_set_check(&[g1, g2]).unwrap_err();
        assert!(matches!(err, Error::Incoherent { a: 0, b: 1, .. }), "{err}");
    }

    #[test]
    fn independent_pair_agrees_with_coproduct_rule() {
        // One rule adds `a` to p, the other replaces `b` by `a` on q.
        let host = discrete_host(&[("p", &[]), ("q", &["b"])]);
        let add = discrete(
            "add",
            &[("p", &[])],
            &[("p", &[])],
            &[("p", &[])],
            &[("p", &["a"])],
        );
        let swap = discrete(
            "swap",
            &[("q", &["b"])],
            &[("q", &[])],
            &[("q", &[])],
            &[("q", &["a"])],
        );
        let ma = find_matches(&add, &host)
            .unwrap()
            .into_iter()
            .find(|m| m.sigma().node("p") == Some("p"))
            .unwrap();
        let ms = find_matches(&swap, &host).unwrap().remove(0);
        let (ga, gs) = (apply_direct(&ma).unwrap(), apply_direct(&ms).unwrap());
        assert!(check_parallel_independent(&ga, &gs).unwrap().is_some());
        let step = pct(&[ga.clone(), gs.clone()]).unwrap();
        let expected = discrete_host(&[("p", &["a"]), ("q", &["a"])]);
        assert!(is_attr_isomorphic(&step.result, &expected).is_some());

        let sum = Arc::new(coproduct_rule(&add, &swap).unwrap());
        let combined = coproduct_match(&ma, &ms, &sum).unwrap();
        let direct = apply_direct(&combined).unwrap();
        assert!(is_attr_isomorphic(&direct.result, &expected).is_some());

        for order in [[0, 1], [1, 0]] {
            let steps = apply_sequentially(&[ga.clone(), gs.clone()], &order).unwrap();
            assert!(is_attr_isomorphic(&steps.last().unwrap().result, &expected).is_some());
        }
    }

    #[test]
    fn maximal_deletion_can_break_one_sequential_order() {
        // `add` puts `a` on an empty-labelled requirement, `drop` removes
        // `a`. Both are independent, but applying `add` first then `drop`
        // with maximal deletion loses the label that the parallel step keeps.
        let host = discrete_host(&[("p", &["a"])]);
        let add = discrete(
            "add",
            &[("p", &[])],
            &[("p", &[])],
            &[("p", &[])],
            &[("p", &["a"])],
        );
        let drop = discrete(
            "drop",
            &[("p", &["a"])],
            &[("p", &[])],
            &[("p", &[])],
            &[("p", &[])],
        );
        let ga = apply_direct(&find_matches(&add, &host).unwrap().remove(0)).unwrap();
        let gd = apply_direct(&find_matches(&drop, &host).unwrap().remove(0)).unwrap();
        assert!(check_parallel_independent(&ga, &gd).unwrap().is_some());
        let parallel = pct(&[ga.clone(), gd.clone()]).unwrap().result;
        assert_eq!(parallel.node_label("p"), &[Value::Sym("a".into())].into());
        let drop_first = apply_sequentially(&[ga.clone(), gd.clone()], &[1, 0]).unwrap();
        assert!(is_attr_isomorphic(&drop_first[1].result, &parallel).is_some());
        let add_first = apply_sequentially(&[ga, gd], &[0, 1]).unwrap();
        assert!(add_first[1].result.node_label("p").is_empty());
    }
}
