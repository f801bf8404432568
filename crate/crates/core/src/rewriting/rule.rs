use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::algebra::{apply_to_labelset, Algebra, AlgebraMorphism, Term, Value};
use crate::attr::{same_attr, AttrGraph, AttrMorphism};
use crate::error::{Error, Result};
use crate::graph::{disjoint_union, sum_morphism, Element, GraphMorphism};

/// A weak span `L ←l− K ←i− I −r→ R`.
///
/// All three legs are neutral monos over one rule algebra. When that algebra
/// is a term algebra, every variable must appear on its own in some label of
/// `L`, so that a match determines its value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakSpan {
    name: String,
    l: AttrMorphism,
    i: AttrMorphism,
    r: AttrMorphism,
}

impl WeakSpan {
    pub fn new(
        name: impl Into<String>,
        l: AttrMorphism,
        i: AttrMorphism,
        r: AttrMorphism,
    ) -> Result<Self> {
        let rule = WeakSpan {
            name: name.into(),
            l,
            i,
            r,
        };
        rule.validate()?;
        Ok(rule)
    }

    /// An ordinary span `L ← K → R`, seen as a weak span with `I = K`.
    pub fn span(name: impl Into<String>, l: AttrMorphism, r: AttrMorphism) -> Result<Self> {
        let i = AttrMorphism::identity(l.source().clone());
        WeakSpan::new(name, l, i, r)
    }

    /// The rule that matches `g` and changes nothing.
    pub fn identity(name: impl Into<String>, g: Arc<AttrGraph>) -> Result<Self> {
        let id = AttrMorphism::identity(g);
        WeakSpan::new(name, id.clone(), id.clone(), id)
    }

    fn invalid(&self, reason: impl Into<String>) -> Error {
        Error::InvalidRule {
            rule: self.name.clone(),
            reason: reason.into(),
        }
    }

    fn validate(&self) -> Result<()> {
        for (leg, m) in [("l", &self.l), ("i", &self.i), ("r", &self.r)] {
            if !m.is_neutral() {
                return Err(self.invalid(format!("leg {leg} is not neutral")));
            }
            if !m.is_mono() {
                return Err(self.invalid(format!("leg {leg} is not injective")));
            }
        }
        if !same_attr(self.i.target(), self.l.source()) {
            return Err(self.invalid("i does not land in the source of l"));
        }
        if !same_attr(self.i.source(), self.r.source()) {
            return Err(self.invalid("i and r do not share a source"));
        }
        let Some(vars) = self.algebra().variables() else {
            return Ok(());
        };
        let bare: BTreeSet<&str> = self
            .lhs()
            .labels()
            .values()
            .flatten()
            .filter_map(|v| match v {
                Value::Term(Term::Var(x)) => Some(x.as_str()),
                _ => None,
            })
            .collect();
        if let Some(v) = vars.iter().find(|v| !bare.contains(v.as_str())) {
            return Err(self.invalid(format!(
                "variable `{v}` does not appear on its own in any label of L"
            )));
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.lhs().algebra()
    }

    /// Declared variables of the rule algebra; empty unless it is a term
    /// algebra.
    pub fn variables(&self) -> BTreeSet<String> {
        self.algebra().variables().cloned().unwrap_or_default()
    }

    pub fn lhs(&self) -> &Arc<AttrGraph> {
        self.l.target()
    }

    pub fn kept(&self) -> &Arc<AttrGraph> {
        self.l.source()
    }

    pub fn interface(&self) -> &Arc<AttrGraph> {
        self.i.source()
    }

    pub fn rhs(&self) -> &Arc<AttrGraph> {
        self.r.target()
    }

    /// `l: K → L`.
    pub fn l(&self) -> &AttrMorphism {
        &self.l
    }

    /// `i: I → K`.
    pub fn i(&self) -> &AttrMorphism {
        &self.i
    }

    /// `r: I → R`.
    pub fn r(&self) -> &AttrMorphism {
        &self.r
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

impl fmt::Display for WeakSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rule {}", self.name)?;
        writeln!(f, "  L: {}", self.lhs())?;
        writeln!(f, "  K: {}", self.kept())?;
        writeln!(f, "  I: {}", self.interface())?;
        write!(f, "  R: {}", self.rhs())
    }
}

/// A span `L ←l− K −r→ R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span {
    pub name: String,
    pub l: AttrMorphism,
    pub r: AttrMorphism,
}

impl Span {
    pub fn lhs(&self) -> &Arc<AttrGraph> {
        self.l.target()
    }

    pub fn kept(&self) -> &Arc<AttrGraph> {
        self.l.source()
    }

    pub fn rhs(&self) -> &Arc<AttrGraph> {
        self.r.target()
    }
}

/// Renaming applied to the second rule's variables in a coproduct, so the
/// two variable sets become disjoint. Non-clashing names are kept.
pub fn coproduct_renaming(first: &WeakSpan, second: &WeakSpan) -> BTreeMap<String, String> {
    let v1 = first.variables();
    let v2 = second.variables();
    let mut taken: BTreeSet<String> = v1.union(&v2).cloned().collect();
    let mut out = BTreeMap::new();
    for v in &v2 {
        if !v1.contains(v) {
            out.insert(v.clone(), v.clone());
            continue;
        }
        let mut n = 2;
        let fresh = loop {
            let candidate = format!("{v}_{n}");
            if !taken.contains(&candidate) {
                break candidate;
            }
            n += 1;
        };
        taken.insert(fresh.clone());
        out.insert(v.clone(), fresh);
    }
    out
}

fn coproduct_algebra(
    first: &WeakSpan,
    second: &WeakSpan,
    renaming: &BTreeMap<String, String>,
) -> Result<Arc<Algebra>> {
    match (&**first.algebra(), &**second.algebra()) {
        (Algebra::Terms { ops: o1, vars: v1 }, Algebra::Terms { ops: o2, .. }) if o1 == o2 => {
            let mut vars = v1.clone();
            vars.extend(renaming.values().cloned());
            Ok(Arc::new(Algebra::Terms {
                ops: o1.clone(),
                vars,
            }))
        }
        (a, b) if a == b => Ok(first.algebra().clone()),
        _ => Err(Error::AlgebraMismatch(format!(
            "rules `{}` and `{}` are over different algebras",
            first.name(),
            second.name()
        ))),
    }
}

/// The algebra morphism that moves labels of a component rule into the
/// coproduct algebra (renaming variables where needed).
fn embed_labels(
    rule: &WeakSpan,
    into: &Arc<Algebra>,
    renaming: Option<&BTreeMap<String, String>>,
) -> Result<AlgebraMorphism> {
    if crate::algebra::same_algebra(rule.algebra(), into) {
        return Ok(AlgebraMorphism::identity(into.clone()));
    }
    let map = rule
        .variables()
        .into_iter()
        .map(|v| {
            let to = renaming.map_or(v.clone(), |r| r[&v].clone());
            (v, Value::Term(Term::Var(to)))
        })
        .collect();
    AlgebraMorphism::assignment(rule.algebra().clone(), into.clone(), map)
}

type Summand = (Arc<AttrGraph>, GraphMorphism, GraphMorphism);

fn sum_graphs(
    a: &Arc<AttrGraph>,
    b: &Arc<AttrGraph>,
    ha: &AlgebraMorphism,
    hb: &AlgebraMorphism,
    algebra: &Arc<Algebra>,
) -> Result<Summand> {
    let (graph, inl, inr) = disjoint_union(a.graph(), b.graph())?;
    let mut labels: BTreeMap<Element, _> = BTreeMap::new();
    for (side, inj, h) in [(a, &inl, ha), (b, &inr, hb)] {
        for (e, set) in side.labels() {
            labels.insert(inj.apply(e).unwrap(), apply_to_labelset(h, set)?);
        }
    }
    let sum = Arc::new(AttrGraph::new(graph, algebra.clone(), labels)?);
    Ok((sum, inl, inr))
}

/// Componentwise disjoint union `ρ₁ + ρ₂` of two rules. Elements of the
/// first rule are prefixed `inl:`, those of the second `inr:`; clashing
/// variables of the second rule are renamed by [`coproduct_renaming`].
pub fn coproduct_rule(first: &WeakSpan, second: &WeakSpan) -> Result<WeakSpan> {
    let renaming = coproduct_renaming(first, second);
    let algebra = coproduct_algebra(first, second, &renaming)?;
    let h1 = embed_labels(first, &algebra, None)?;
    let h2 = embed_labels(second, &algebra, Some(&renaming))?;
    let sum = |a: &Arc<AttrGraph>, b: &Arc<AttrGraph>| sum_graphs(a, b, &h1, &h2, &algebra);
    let (l_sum, ..) = sum(first.lhs(), second.lhs())?;
    let (k_sum, ..) = sum(first.kept(), second.kept())?;
    let (i_sum, ..) = sum(first.interface(), second.interface())?;
    let (r_sum, ..) = sum(first.rhs(), second.rhs())?;
    let leg = |src: &Arc<AttrGraph>, tgt: &Arc<AttrGraph>, f: &AttrMorphism, g: &AttrMorphism| {
        let sigma = sum_morphism(src.graph(), tgt.graph(), f.sigma(), g.sigma())?;
        AttrMorphism::new(
            src.clone(),
            tgt.clone(),
            sigma,
            AlgebraMorphism::identity(algebra.clone()),
        )
    };
    let l = leg(&k_sum, &l_sum, first.l(), second.l())?;
    let i = leg(&i_sum, &k_sum, first.i(), second.i())?;
    let r = leg(&i_sum, &r_sum, first.r(), second.r())?;
    WeakSpan::new(format!("{}+{}", first.name(), second.name()), l, i, r)
}

#[cfg(test)]
pub(crate) mod fixtures {
    //! The two Fibonacci rules and their host, shared by the tests of the
    //! rewriting modules.
    use super::*;
    use crate::graph::{Graph, Signature};

    pub fn sig() -> Arc<Signature> {
        Signature::simple("place", "next")
    }

    pub fn nat_pair(x: &[u64], y: &[u64]) -> Arc<AttrGraph> {
        let vals = |s: &[u64]| s.iter().map(|&n| Value::Nat(n)).collect();
        pair(&Algebra::nat(), vals(x), vals(y))
    }

    pub fn pair(
        alg: &Arc<Algebra>,
        x: crate::algebra::LabelSet,
        y: crate::algebra::LabelSet,
    ) -> Arc<AttrGraph> {
        let mut g = Graph::new(sig());
        g.add_node("x", "place").unwrap();
        g.add_node("y", "place").unwrap();
        g.add_edge("e", "next", "x", "y").unwrap();
        let labels = BTreeMap::from([
            (Element::Node("x".into()), x),
            (Element::Node("y".into()), y),
        ]);
        Arc::new(AttrGraph::new(Arc::new(g), alg.clone(), labels).unwrap())
    }

    pub fn term_pair(alg: &Arc<Algebra>, x: &[&str], y: &[&str]) -> Arc<AttrGraph> {
        let vals = |s: &[&str]| {
            s.iter()
                .map(|t| Value::Term(Term::parse(t).unwrap()))
                .collect()
        };
        pair(alg, vals(x), vals(y))
    }

    pub fn point(alg: &Arc<Algebra>, id: &str, label: &[&str]) -> Arc<AttrGraph> {
        let mut g = Graph::new(sig());
        g.add_node(id, "place").unwrap();
        let labels = BTreeMap::from([(
            Element::Node(id.into()),
            label
                .iter()
                .map(|t| Value::Term(Term::parse(t).unwrap()))
                .collect(),
        )]);
        Arc::new(AttrGraph::new(Arc::new(g), alg.clone(), labels).unwrap())
    }

    fn ids(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    }

    /// `target` gets the value of the other node; `target` is "x" for
    /// (x≔y) and "y" for (y≔x+y).
    fn assign(name: &str, target: &str, rhs_label: &str) -> WeakSpan {
        let alg = Algebra::terms(["u", "v"]);
        let lhs = term_pair(&alg, &["u"], &["v"]);
        let kept = if target == "x" {
            term_pair(&alg, &[], &["v"])
        } else {
            term_pair(&alg, &["u"], &[])
        };
        let interface = point(&alg, "i", &[]);
        let rhs = point(&alg, "r", &[rhs_label]);
        let both = ids(&[("x", "x"), ("y", "y")]);
        let l = AttrMorphism::neutral(kept.clone(), lhs, both, ids(&[("e", "e")])).unwrap();
        let i = AttrMorphism::neutral(
            interface.clone(),
            kept,
            ids(&[("i", target)]),
            BTreeMap::new(),
        )
        .unwrap();
        let r = AttrMorphism::neutral(interface, rhs, ids(&[("i", "r")]), BTreeMap::new()).unwrap();
        WeakSpan::new(name, l, i, r).unwrap()
    }

    pub fn x_gets_y() -> Arc<WeakSpan> {
        Arc::new(assign("x:=y", "x", "v"))
    }

    pub fn y_gets_sum() -> Arc<WeakSpan> {
        Arc::new(assign("y:=x+y", "y", "u+v"))
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn fibonacci_rules_are_valid() {
        let r = y_gets_sum();
        assert_eq!(
            r.variables(),
            BTreeSet::from(["u".to_string(), "v".to_string()])
        );
        assert_eq!(r.interface().element_count(), 1);
    }

    #[test]
    fn variable_missing_from_lhs_is_rejected() {
        let alg = Algebra::terms(["u", "w"]);
        let g = point(&alg, "p", &["u"]);
        assert!(matches!(
            WeakSpan::identity("bad", g),
            Err(Error::InvalidRule { reason, .. }) if reason.contains("`w`")
        ));
    }

    #[test]
    fn non_injective_leg_is_rejected() {
        let alg = Algebra::enumeration(["a"]);
        let mut g = crate::graph::Graph::new(sig());
        g.add_node("p", "place").unwrap();
        g.add_node("q", "place").unwrap();
        let two = Arc::new(AttrGraph::unlabelled(Arc::new(g), alg.clone()));
        let mut g = crate::graph::Graph::new(sig());
        g.add_node("p", "place").unwrap();
        let one = Arc::new(AttrGraph::unlabelled(Arc::new(g), alg));
        let squash = AttrMorphism::neutral(
            two.clone(),
            one.clone(),
            BTreeMap::from([("p".into(), "p".into()), ("q".into(), "p".into())]),
            BTreeMap::new(),
        )
        .unwrap();
        let id = AttrMorphism::identity(two);
        assert!(matches!(
            WeakSpan::new("bad", squash, id.clone(), id),
            Err(Error::InvalidRule { reason, .. }) if reason.contains("leg l")
        ));
    }

    #[test]
    fn coproduct_renames_clashing_variables() {
        let sum = coproduct_rule(&x_gets_y(), &y_gets_sum()).unwrap();
        assert_eq!(sum.lhs().graph().node_count(), 4);
        assert_eq!(sum.interface().graph().node_count(), 2);
        assert_eq!(
            sum.variables(),
            ["u", "u_2", "v", "v_2"]
                .iter()
                .map(|s| s.to_string())
                .collect()
        );
        let rhs_label = sum.rhs().node_label("inr:r");
        assert_eq!(
            rhs_label,
            &[Value::Term(Term::parse("u_2+v_2").unwrap())].into()
        );
        assert_eq!(sum.name(), "x:=y+y:=x+y");
    }

    #[test]
    fn coproduct_with_empty_rule() {
        let alg = Algebra::terms(["u", "v"]);
        let empty = Arc::new(AttrGraph::unlabelled(
            Arc::new(crate::graph::Graph::new(sig())),
            Algebra::terms(Vec::<String>::new()),
        ));
        let nothing = WeakSpan::identity("none", empty).unwrap();
        let rule = x_gets_y();
        let sum = coproduct_rule(&rule, &nothing).unwrap();
        assert_eq!(sum.lhs().element_count(), rule.lhs().element_count());
        assert_eq!(*sum.algebra(), alg);
    }
}
