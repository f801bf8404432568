//! Finitely attributed graphs and their lax morphisms.
//!
//! An [`AttrGraph`] labels every node and every edge with a finite set of
//! carrier values. A morphism pairs a graph morphism with an algebra
//! morphism; labels may grow along it but never shrink:
//! `α(label(u)) ⊆ label(σ(u))` for every element `u`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{
    apply_to_labelset, compose_algebra, same_algebra, Algebra, AlgebraMorphism, LabelSet, Value,
};
use crate::error::{Error, Result};
use crate::graph::{compose, same_graph, Element, Graph, GraphMorphism};
use crate::search::{canonical_key, MapKind, Search};

#[derive(Debug, Clone)]
pub struct AttrGraph {
    graph: Arc<Graph>,
    algebra: Arc<Algebra>,
    labels: BTreeMap<Element, LabelSet>,
}

impl PartialEq for AttrGraph {
    fn eq(&self, other: &Self) -> bool {
        same_graph(&self.graph, &other.graph)
            && same_algebra(&self.algebra, &other.algebra)
            && self.labels == other.labels
    }
}

impl Eq for AttrGraph {}

impl AttrGraph {
    /// Elements missing from `labels` get the empty set.
    pub fn new(
        graph: Arc<Graph>,
        algebra: Arc<Algebra>,
        mut labels: BTreeMap<Element, LabelSet>,
    ) -> Result<Self> {
        if let Some(stray) = labels.keys().find(|e| !graph.contains(e)) {
            return Err(Error::InvalidGraph(format!(
                "label given for unknown {stray}"
            )));
        }
        for e in graph.elements() {
            let set = labels.entry(e.clone()).or_default();
            if let Some(v) = set.iter().find(|v| !algebra.contains(v)) {
                return Err(Error::NotInCarrier {
                    value: format!("{v} (on {e})"),
                    algebra: format!("{algebra:?}"),
                });
            }
        }
        Ok(AttrGraph {
            graph,
            algebra,
            labels,
        })
    }

    pub(crate) fn new_unchecked(
        graph: Arc<Graph>,
        algebra: Arc<Algebra>,
        labels: BTreeMap<Element, LabelSet>,
    ) -> Self {
        debug_assert!(graph.elements().all(|e| labels.contains_key(&e)));
        debug_assert_eq!(labels.len(), graph.element_count());
        AttrGraph {
            graph,
            algebra,
            labels,
        }
    }

    /// Every element labelled with the empty set.
    pub fn unlabelled(graph: Arc<Graph>, algebra: Arc<Algebra>) -> Self {
        let labels = graph.elements().map(|e| (e, LabelSet::new())).collect();
        AttrGraph {
            graph,
            algebra,
            labels,
        }
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn labels(&self) -> &BTreeMap<Element, LabelSet> {
        &self.labels
    }

    pub fn label(&self, e: &Element) -> &LabelSet {
        &self.labels[e]
    }

    pub fn node_label(&self, id: &str) -> &LabelSet {
        &self.labels[&Element::Node(id.to_string())]
    }

    pub fn element_count(&self) -> usize {
        self.graph.element_count()
    }
}

impl fmt::Display for AttrGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: &LabelSet| {
            let items: Vec<String> = s.iter().map(Value::to_string).collect();
            format!("{{{}}}", items.join(","))
        };
        let mut first = true;
        for (n, _) in self.graph.nodes() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{n}:{}", show(self.node_label(n)))?;
        }
        for (e, edge) in self.graph.edges() {
            let l = &self.labels[&Element::Edge(e.to_string())];
            write!(f, " {}-[{e}]->{}", edge.src, edge.tgt)?;
            if !l.is_empty() {
                write!(f, ":{}", show(l))?;
            }
        }
        Ok(())
    }
}

/// One element where `α(label(u)) ⊄ label(σ(u))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaxViolation {
    pub element: Element,
    pub image: Element,
    pub mapped_label: LabelSet,
    pub target_label: LabelSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub structural: Vec<String>,
    pub violations: Vec<LaxViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.structural.is_empty() && self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.structural {
            writeln!(f, "{s}")?;
        }
        for v in &self.violations {
            let show = |s: &LabelSet| s.iter().map(Value::to_string).collect::<Vec<_>>().join(",");
            writeln!(
                f,
                "{} -> {}: {{{}}} is not contained in {{{}}}",
                v.element,
                v.image,
                show(&v.mapped_label),
                show(&v.target_label)
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct AttrMorphism {
    source: Arc<AttrGraph>,
    target: Arc<AttrGraph>,
    sigma: GraphMorphism,
    alpha: AlgebraMorphism,
}

impl PartialEq for AttrMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.sigma.node_map() == other.sigma.node_map()
            && self.sigma.edge_map() == other.sigma.edge_map()
            && self.alpha == other.alpha
            && same_attr(&self.source, &other.source)
            && same_attr(&self.target, &other.target)
    }
}

impl Eq for AttrMorphism {}

pub(crate) fn same_attr(a: &Arc<AttrGraph>, b: &Arc<AttrGraph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl AttrMorphism {
    /// Builds and validates; a violation of the lax condition is an error.
    pub fn new(
        source: Arc<AttrGraph>,
        target: Arc<AttrGraph>,
        sigma: GraphMorphism,
        alpha: AlgebraMorphism,
    ) -> Result<Self> {
        let m = AttrMorphism::from_parts(source, target, sigma, alpha);
        let report = validate_attr_morphism(&m);
        if !report.is_valid() {
            return Err(Error::InvalidMorphism(report.to_string()));
        }
        Ok(m)
    }

    /// Assembles without checking; see [`validate_attr_morphism`].
    pub fn from_parts(
        source: Arc<AttrGraph>,
        target: Arc<AttrGraph>,
        sigma: GraphMorphism,
        alpha: AlgebraMorphism,
    ) -> Self {
        AttrMorphism {
            source,
            target,
            sigma,
            alpha,
        }
    }

    /// Builds from node and edge maps, re-anchoring the graph morphism on
    /// the graphs of `source` and `target`.
    pub fn from_maps(
        source: Arc<AttrGraph>,
        target: Arc<AttrGraph>,
        nodes: BTreeMap<String, String>,
        edges: BTreeMap<String, String>,
        alpha: AlgebraMorphism,
    ) -> Result<Self> {
        let sigma = GraphMorphism::new(source.graph.clone(), target.graph.clone(), nodes, edges)?;
        AttrMorphism::new(source, target, sigma, alpha)
    }

    /// A neutral morphism from explicit maps.
    pub fn neutral(
        source: Arc<AttrGraph>,
        target: Arc<AttrGraph>,
        nodes: BTreeMap<String, String>,
        edges: BTreeMap<String, String>,
    ) -> Result<Self> {
        let alpha = AlgebraMorphism::identity(source.algebra.clone());
        AttrMorphism::from_maps(source, target, nodes, edges, alpha)
    }

    pub fn identity(g: Arc<AttrGraph>) -> Self {
        AttrMorphism {
            sigma: GraphMorphism::identity(g.graph.clone()),
            alpha: AlgebraMorphism::identity(g.algebra.clone()),
            source: g.clone(),
            target: g,
        }
    }

    pub fn source(&self) -> &Arc<AttrGraph> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AttrGraph> {
        &self.target
    }

    pub fn sigma(&self) -> &GraphMorphism {
        &self.sigma
    }

    pub fn alpha(&self) -> &AlgebraMorphism {
        &self.alpha
    }

    pub fn apply(&self, e: &Element) -> Option<Element> {
        self.sigma.apply(e)
    }

    pub fn is_neutral(&self) -> bool {
        same_algebra(&self.source.algebra, &self.target.algebra) && self.alpha.is_identity()
    }

    pub fn is_mono(&self) -> bool {
        self.sigma.is_mono()
    }

    /// Two-sided inverse of an isomorphism with equal labels.
    pub fn inverse(&self) -> Option<AttrMorphism> {
        if !self.is_neutral() {
            return None;
        }
        let sigma = self.sigma.inverse()?;
        AttrMorphism::new(
            self.target.clone(),
            self.source.clone(),
            sigma,
            self.alpha.clone(),
        )
        .ok()
    }

    /// Same maps, re-anchored on objects equal to the current ones.
    pub(crate) fn rebase(&self, source: Arc<AttrGraph>, target: Arc<AttrGraph>) -> Result<Self> {
        if !same_attr(&source, &self.source) || !same_attr(&target, &self.target) {
            return Err(Error::Internal("rebase onto unequal objects".into()));
        }
        Ok(AttrMorphism {
            sigma: self
                .sigma
                .rebase(source.graph.clone(), target.graph.clone())?,
            alpha: self.alpha.clone(),
            source,
            target,
        })
    }
}

/// Checks graph-morphism invariants and the lax label condition on every
/// element, collecting every violation.
pub fn validate_attr_morphism(m: &AttrMorphism) -> ValidationReport {
    let mut report = ValidationReport::default();
    if !same_graph(m.sigma.source(), &m.source.graph)
        || !same_graph(m.sigma.target(), &m.target.graph)
    {
        report
            .structural
            .push("graph morphism does not connect the underlying graphs".into());
        return report;
    }
    if let Err(e) = GraphMorphism::new(
        m.source.graph.clone(),
        m.target.graph.clone(),
        m.sigma.node_map().clone(),
        m.sigma.edge_map().clone(),
    ) {
        report.structural.push(e.to_string());
        return report;
    }
    if !same_algebra(m.alpha.source(), &m.source.algebra)
        || !same_algebra(m.alpha.target(), &m.target.algebra)
    {
        report
            .structural
            .push("algebra morphism does not connect the label algebras".into());
        return report;
    }
    for (e, label) in &m.source.labels {
        let image = m.sigma.apply(e).expect("total graph morphism");
        let target_label = m.target.label(&image);
        match apply_to_labelset(&m.alpha, label) {
            Ok(mapped) => {
                if !mapped.is_subset(target_label) {
                    report.violations.push(LaxViolation {
                        element: e.clone(),
                        image,
                        mapped_label: mapped,
                        target_label: target_label.clone(),
                    });
                }
            }
            Err(err) => report.structural.push(format!("{e}: {err}")),
        }
    }
    report
}

/// `g ∘ f`, componentwise.
pub fn compose_attr(g: &AttrMorphism, f: &AttrMorphism) -> Result<AttrMorphism> {
    if !same_attr(&f.target, &g.source) {
        return Err(Error::Composition(
            "target of the first attributed morphism differs from the source of the second".into(),
        ));
    }
    let sigma = compose(&g.sigma, &f.sigma)?;
    let alpha = compose_algebra(&g.alpha, &f.alpha)?;
    let m = AttrMorphism {
        source: f.source.clone(),
        target: g.target.clone(),
        sigma,
        alpha,
    };
    let report = validate_attr_morphism(&m);
    if !report.is_valid() {
        return Err(Error::Internal(format!(
            "composite is not a morphism: {report}"
        )));
    }
    Ok(m)
}

/// A bijective graph isomorphism under which labels agree exactly.
pub fn is_attr_isomorphic(a: &Arc<AttrGraph>, b: &Arc<AttrGraph>) -> Option<AttrMorphism> {
    if !same_algebra(&a.algebra, &b.algebra) {
        return None;
    }
    if **a == **b {
        return Some(
            AttrMorphism::identity(a.clone())
                .rebase(a.clone(), b.clone())
                .ok()?,
        );
    }
    let mut found = None;
    search_attr_isos(a, b, &mut |m| {
        found = Some(m);
        false
    });
    found
}

/// Every attributed isomorphism `a → b`, in canonical order.
pub fn enumerate_attr_isomorphisms(a: &Arc<AttrGraph>, b: &Arc<AttrGraph>) -> Vec<AttrMorphism> {
    if !same_algebra(&a.algebra, &b.algebra) {
        return Vec::new();
    }
    let mut all = Vec::new();
    search_attr_isos(a, b, &mut |m| {
        all.push(m);
        true
    });
    all.sort_by_cached_key(|m| {
        canonical_key(&(m.sigma.node_map().clone(), m.sigma.edge_map().clone()))
    });
    all
}

fn search_attr_isos(
    a: &Arc<AttrGraph>,
    b: &Arc<AttrGraph>,
    visit: &mut dyn FnMut(AttrMorphism) -> bool,
) {
    let node_ok = |p: &str, h: &str| a.node_label(p) == b.node_label(h);
    let edge_ok = |p: &str, h: &str| {
        a.labels[&Element::Edge(p.to_string())] == b.labels[&Element::Edge(h.to_string())]
    };
    Search {
        pattern: &a.graph,
        host: &b.graph,
        kind: MapKind::Bijective,
        node_ok: &node_ok,
        edge_ok: &edge_ok,
    }
    .run(&mut |(n, e)| {
        let sigma =
            GraphMorphism::new_unchecked(a.graph.clone(), b.graph.clone(), n.clone(), e.clone());
        visit(AttrMorphism {
            source: a.clone(),
            target: b.clone(),
            sigma,
            alpha: AlgebraMorphism::identity(a.algebra.clone()),
        })
    });
}
