//! Finite sorted directed multigraphs and their morphisms.
//!
//! A [`Graph`] lives over a [`Signature`] that names its node sorts and its
//! edge sorts (each edge sort fixes the sorts of its endpoints). Plain
//! directed multigraphs are the one-node-sort, one-edge-sort special case.
//!
//! The *elements* of a graph are its nodes and its edges, kept apart by
//! [`Element`] so that a node and an edge may share an id.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Node(String),
    Edge(String),
}

impl Element {
    pub fn id(&self) -> &str {
        match self {
            Element::Node(id) | Element::Edge(id) => id,
        }
    }

    pub fn is_node(&self) -> bool {
        matches!(self, Element::Node(_))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Node(id) => write!(f, "node `{id}`"),
            Element::Edge(id) => write!(f, "edge `{id}`"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSort {
    pub src: String,
    pub tgt: String,
}

/// Node sorts plus edge sorts with their endpoint sorts.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Signature {
    node_sorts: BTreeSet<String>,
    edge_sorts: BTreeMap<String, EdgeSort>,
}

impl Signature {
    pub fn new<N, E>(node_sorts: N, edge_sorts: E) -> Result<Self>
    where
        N: IntoIterator,
        N::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let mut sig = Signature::default();
        for s in node_sorts {
            let s = s.into();
            if !sig.node_sorts.insert(s.clone()) {
                return Err(Error::Signature(format!("duplicate node sort `{s}`")));
            }
        }
        for (name, src, tgt) in edge_sorts {
            for end in [&src, &tgt] {
                if !sig.node_sorts.contains(end) {
                    return Err(Error::Signature(format!(
                        "edge sort `{name}` refers to undeclared node sort `{end}`"
                    )));
                }
            }
            if sig
                .edge_sorts
                .insert(name.clone(), EdgeSort { src, tgt })
                .is_some()
            {
                return Err(Error::Signature(format!("duplicate edge sort `{name}`")));
            }
        }
        Ok(sig)
    }

    /// One node sort and one edge sort between nodes of that sort.
    pub fn simple(node_sort: &str, edge_sort: &str) -> Arc<Self> {
        Arc::new(
            Signature::new(
                [node_sort],
                [(
                    edge_sort.to_string(),
                    node_sort.to_string(),
                    node_sort.to_string(),
                )],
            )
            .expect("simple signature is well-formed"),
        )
    }

    pub fn node_sorts(&self) -> impl Iterator<Item = &str> {
        self.node_sorts.iter().map(String::as_str)
    }

    pub fn edge_sorts(&self) -> impl Iterator<Item = (&str, &EdgeSort)> {
        self.edge_sorts.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn has_node_sort(&self, sort: &str) -> bool {
        self.node_sorts.contains(sort)
    }

    pub fn edge_sort(&self, sort: &str) -> Option<&EdgeSort> {
        self.edge_sorts.get(sort)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub sort: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone)]
pub struct Graph {
    signature: Arc<Signature>,
    nodes: BTreeMap<String, String>,
    edges: BTreeMap<String, Edge>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.signature, &other.signature) || self.signature == other.signature)
            && self.nodes == other.nodes
            && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new(signature: Arc<Signature>) -> Self {
        Graph {
            signature,
            nodes: BTreeMap::new(),
            edges: BTreeMap::new(),
        }
    }

    pub fn add_node(&mut self, id: impl Into<String>, sort: impl Into<String>) -> Result<()> {
        let (id, sort) = (id.into(), sort.into());
        if !self.signature.has_node_sort(&sort) {
            return Err(Error::InvalidGraph(format!(
                "node `{id}` has undeclared sort `{sort}`"
            )));
        }
        if self.nodes.contains_key(&id) {
            return Err(Error::InvalidGraph(format!("duplicate node id `{id}`")));
        }
        self.nodes.insert(id, sort);
        Ok(())
    }

    pub fn add_edge(
        &mut self,
        id: impl Into<String>,
        sort: impl Into<String>,
        src: impl Into<String>,
        tgt: impl Into<String>,
    ) -> Result<()> {
        let (id, sort, src, tgt) = (id.into(), sort.into(), src.into(), tgt.into());
        let Some(es) = self.signature.edge_sort(&sort) else {
            return Err(Error::InvalidGraph(format!(
                "edge `{id}` has undeclared sort `{sort}`"
            )));
        };
        for (end, want) in [(&src, &es.src), (&tgt, &es.tgt)] {
            match self.nodes.get(end) {
                None => {
                    return Err(Error::InvalidGraph(format!(
                        "edge `{id}` refers to missing node `{end}`"
                    )))
                }
                Some(s) if s != want => {
                    return Err(Error::InvalidGraph(format!(
                        "edge `{id}` of sort `{sort}` needs endpoint `{end}` of sort `{want}`, found `{s}`"
                    )))
                }
                _ => {}
            }
        }
        if self.edges.contains_key(&id) {
            return Err(Error::InvalidGraph(format!("duplicate edge id `{id}`")));
        }
        self.edges.insert(id, Edge { sort, src, tgt });
        Ok(())
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.signature
    }

    pub fn same_signature(&self, other: &Graph) -> bool {
        Arc::ptr_eq(&self.signature, &other.signature) || self.signature == other.signature
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = (&str, &str)> {
        self.nodes.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = (&str, &Edge)> {
        self.edges.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn node_sort(&self, id: &str) -> Option<&str> {
        self.nodes.get(id).map(String::as_str)
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.get(id)
    }

    pub fn has_node(&self, id: &str) -> bool {
        self.nodes.contains_key(id)
    }

    pub fn has_edge(&self, id: &str) -> bool {
        self.edges.contains_key(id)
    }

    pub fn contains(&self, e: &Element) -> bool {
        match e {
            Element::Node(id) => self.has_node(id),
            Element::Edge(id) => self.has_edge(id),
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn element_count(&self) -> usize {
        self.nodes.len() + self.edges.len()
    }

    /// Nodes first, then edges, each in id order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        self.nodes
            .keys()
            .map(|k| Element::Node(k.clone()))
            .chain(self.edges.keys().map(|k| Element::Edge(k.clone())))
    }
}

/// A sort- and incidence-preserving map between two graphs.
#[derive(Debug, Clone)]
pub struct GraphMorphism {
    source: Arc<Graph>,
    target: Arc<Graph>,
    nodes: BTreeMap<String, String>,
    edges: BTreeMap<String, String>,
}

impl PartialEq for GraphMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes
            && self.edges == other.edges
            && same_graph(&self.source, &other.source)
            && same_graph(&self.target, &other.target)
    }
}

impl Eq for GraphMorphism {}

pub(crate) fn same_graph(a: &Arc<Graph>, b: &Arc<Graph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl GraphMorphism {
    pub fn new(
        source: Arc<Graph>,
        target: Arc<Graph>,
        nodes: BTreeMap<String, String>,
        edges: BTreeMap<String, String>,
    ) -> Result<Self> {
        let m = GraphMorphism {
            source,
            target,
            nodes,
            edges,
        };
        m.check()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(
        source: Arc<Graph>,
        target: Arc<Graph>,
        nodes: BTreeMap<String, String>,
        edges: BTreeMap<String, String>,
    ) -> Self {
        debug_assert!(GraphMorphism {
            source: source.clone(),
            target: target.clone(),
            nodes: nodes.clone(),
            edges: edges.clone()
        }
        .check()
        .is_ok());
        GraphMorphism {
            source,
            target,
            nodes,
            edges,
        }
    }

    fn check(&self) -> Result<()> {
        if !self.source.same_signature(&self.target) {
            return Err(Error::SignatureMismatch);
        }
        let bad = |msg: String| Err(Error::InvalidMorphism(msg));
        if self.nodes.len() != self.source.node_count()
            || self.edges.len() != self.source.edge_count()
        {
            return bad("node or edge map is not total on the source".into());
        }
        for (n, sort) in self.source.nodes() {
            let Some(img) = self.nodes.get(n) else {
                return bad(format!("node `{n}` is unmapped"));
            };
            match self.target.node_sort(img) {
                None => return bad(format!("node `{n}` maps to missing node `{img}`")),
                Some(s) if s != sort => {
                    return bad(format!(
                        "node `{n}` of sort `{sort}` maps to `{img}` of sort `{s}`"
                    ))
                }
                _ => {}
            }
        }
        for (e, edge) in self.source.edges() {
            let Some(img) = self.edges.get(e) else {
                return bad(format!("edge `{e}` is unmapped"));
            };
            let Some(t) = self.target.edge(img) else {
                return bad(format!("edge `{e}` maps to missing edge `{img}`"));
            };
            if t.sort != edge.sort {
                return bad(format!("edge `{e}` maps to `{img}` of a different sort"));
            }
            if self.nodes[&edge.src] != t.src || self.nodes[&edge.tgt] != t.tgt {
                return bad(format!(
                    "edge `{e}` maps to `{img}` but its endpoints do not follow"
                ));
            }
        }
        Ok(())
    }

    pub fn identity(g: Arc<Graph>) -> Self {
        let nodes = g
            .nodes()
            .map(|(n, _)| (n.to_string(), n.to_string()))
            .collect();
        let edges = g
            .edges()
            .map(|(e, _)| (e.to_string(), e.to_string()))
            .collect();
        GraphMorphism {
            source: g.clone(),
            target: g,
            nodes,
            edges,
        }
    }

    pub fn source(&self) -> &Arc<Graph> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Graph> {
        &self.target
    }

    pub fn node_map(&self) -> &BTreeMap<String, String> {
        &self.nodes
    }

    pub fn edge_map(&self) -> &BTreeMap<String, String> {
        &self.edges
    }

    pub fn node(&self, id: &str) -> Option<&str> {
        self.nodes.get(id).map(String::as_str)
    }

    pub fn edge(&self, id: &str) -> Option<&str> {
        self.edges.get(id).map(String::as_str)
    }

    pub fn apply(&self, e: &Element) -> Option<Element> {
        match e {
            Element::Node(id) => self.nodes.get(id).map(|x| Element::Node(x.clone())),
            Element::Edge(id) => self.edges.get(id).map(|x| Element::Edge(x.clone())),
        }
    }

    /// Inverse image of every target element.
    pub fn preimages(&self) -> BTreeMap<Element, Vec<Element>> {
        let mut out: BTreeMap<Element, Vec<Element>> = BTreeMap::new();
        for (s, t) in &self.nodes {
            out.entry(Element::Node(t.clone()))
                .or_default()
                .push(Element::Node(s.clone()));
        }
        for (s, t) in &self.edges {
            out.entry(Element::Edge(t.clone()))
                .or_default()
                .push(Element::Edge(s.clone()));
        }
        out
    }

    pub fn is_mono(&self) -> bool {
        injective(&self.nodes) && injective(&self.edges)
    }

    pub fn is_identity(&self) -> bool {
        same_graph(&self.source, &self.target)
            && self.nodes.iter().all(|(a, b)| a == b)
            && self.edges.iter().all(|(a, b)| a == b)
    }

    /// Swap source and target of a bijection.
    pub fn inverse(&self) -> Option<GraphMorphism> {
        if !self.is_mono()
            || self.nodes.len() != self.target.node_count()
            || self.edges.len() != self.target.edge_count()
        {
            return None;
        }
        Some(GraphMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            nodes: self
                .nodes
                .iter()
                .map(|(a, b)| (b.clone(), a.clone()))
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|(a, b)| (b.clone(), a.clone()))
                .collect(),
        })
    }

    /// Same maps, re-anchored on graphs equal to the current ones.
    pub(crate) fn rebase(&self, source: Arc<Graph>, target: Arc<Graph>) -> Result<Self> {
        if !same_graph(&source, &self.source) || !same_graph(&target, &self.target) {
            return Err(Error::Internal("rebase onto unequal graphs".into()));
        }
        Ok(GraphMorphism {
            source,
            target,
            nodes: self.nodes.clone(),
            edges: self.edges.clone(),
        })
    }
}

fn injective(m: &BTreeMap<String, String>) -> bool {
    let mut seen = BTreeSet::new();
    m.values().all(|v| seen.insert(v))
}

/// `g ∘ f`: first `f`, then `g`.
pub fn compose(g: &GraphMorphism, f: &GraphMorphism) -> Result<GraphMorphism> {
    if !same_graph(&f.target, &g.source) {
        return Err(Error::Composition(
            "target of the first morphism differs from the source of the second".into(),
        ));
    }
    let nodes = f
        .nodes
        .iter()
        .map(|(a, b)| (a.clone(), g.nodes[b].clone()))
        .collect();
    let edges = f
        .edges
        .iter()
        .map(|(a, b)| (a.clone(), g.edges[b].clone()))
        .collect();
    Ok(GraphMorphism {
        source: f.source.clone(),
        target: g.target.clone(),
        nodes,
        edges,
    })
}

pub fn is_mono(f: &GraphMorphism) -> bool {
    f.is_mono()
}

/// Coproduct of two graphs with its two injections.
///
/// Elements of `a` are renamed `inl:<id>`, elements of `b` become `inr:<id>`.
pub fn disjoint_union(
    a: &Arc<Graph>,
    b: &Arc<Graph>,
) -> Result<(Arc<Graph>, GraphMorphism, GraphMorphism)> {
    if !a.same_signature(b) {
        return Err(Error::SignatureMismatch);
    }
    let mut sum = Graph::new(a.signature.clone());
    let mut injections = Vec::with_capacity(2);
    for (prefix, g) in [("inl", a), ("inr", b)] {
        let name = |id: &str| format!("{prefix}:{id}");
        let mut nodes = BTreeMap::new();
        let mut edges = BTreeMap::new();
        for (n, s) in g.nodes() {
            sum.nodes.insert(name(n), s.to_string());
            nodes.insert(n.to_string(), name(n));
        }
        for (e, edge) in g.edges() {
            sum.edges.insert(
                name(e),
                Edge {
                    sort: edge.sort.clone(),
                    src: name(&edge.src),
                    tgt: name(&edge.tgt),
                },
            );
            edges.insert(e.to_string(), name(e));
        }
        injections.push((nodes, edges));
    }
    let sum = Arc::new(sum);
    let (rn, re) = injections.pop().unwrap();
    let (ln, le) = injections.pop().unwrap();
    Ok((
        sum.clone(),
        GraphMorphism::new_unchecked(a.clone(), sum.clone(), ln, le),
        GraphMorphism::new_unchecked(b.clone(), sum, rn, re),
    ))
}

/// The copairing `[f, g]: A + B → X` out of a coproduct built by
/// [`disjoint_union`].
pub fn copair(
    sum: &Arc<Graph>,
    left: &GraphMorphism,
    right: &GraphMorphism,
) -> Result<GraphMorphism> {
    if !same_graph(&left.target, &right.target) {
        return Err(Error::Composition(
            "copairing legs have different targets".into(),
        ));
    }
    let mut nodes = BTreeMap::new();
    let mut edges = BTreeMap::new();
    for (prefix, m) in [("inl", left), ("inr", right)] {
        for (a, b) in &m.nodes {
            nodes.insert(format!("{prefix}:{a}"), b.clone());
        }
        for (a, b) in &m.edges {
            edges.insert(format!("{prefix}:{a}"), b.clone());
        }
    }
    GraphMorphism::new(sum.clone(), left.target.clone(), nodes, edges)
}

/// `f + g: A + B → C + D`, given both coproducts.
pub fn sum_morphism(
    source_sum: &Arc<Graph>,
    target_sum: &Arc<Graph>,
    f: &GraphMorphism,
    g: &GraphMorphism,
) -> Result<GraphMorphism> {
    let mut nodes = BTreeMap::new();
    let mut edges = BTreeMap::new();
    for (prefix, m) in [("inl", f), ("inr", g)] {
        for (a, b) in &m.nodes {
            nodes.insert(format!("{prefix}:{a}"), format!("{prefix}:{b}"));
        }
        for (a, b) in &m.edges {
            edges.insert(format!("{prefix}:{a}"), format!("{prefix}:{b}"));
        }
    }
    GraphMorphism::new(source_sum.clone(), target_sum.clone(), nodes, edges)
}

/// Allocates unique ids from preferred names, priming on collision.
#[derive(Debug, Default)]
pub(crate) struct FreshIds {
    taken: BTreeSet<String>,
}

impl FreshIds {
    pub(crate) fn reserve(&mut self, id: &str) -> bool {
        self.taken.insert(id.to_string())
    }

    pub(crate) fn fresh(&mut self, base: String) -> String {
        let mut id = base;
        while self.taken.contains(&id) {
            id.push('\'');
        }
        self.taken.insert(id.clone());
        id
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Arc<Signature> {
        Signature::simple("n", "e")
    }

    fn path(ids: &[&str]) -> Arc<Graph> {
        let mut g = Graph::new(sig());
        for id in ids {
            g.add_node(*id, "n").unwrap();
        }
        for w in ids.windows(2) {
            g.add_edge(format!("{}{}", w[0], w[1]), "e", w[0], w[1])
                .unwrap();
        }
        Arc::new(g)
    }

    fn nodes_only(ids: &[&str]) -> Arc<Graph> {
        let mut g = Graph::new(sig());
        for id in ids {
            g.add_node(*id, "n").unwrap();
        }
        Arc::new(g)
    }

    fn map(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    }

    #[test]
    fn signature_rejects_unknown_endpoint_sort() {
        let err = Signature::new(["a"], [("e".into(), "a".into(), "b".into())]).unwrap_err();
        assert!(matches!(err, Error::Signature(_)));
    }

    #[test]
    fn edge_endpoint_must_exist() {
        let mut g = Graph::new(sig());
        g.add_node("x", "n").unwrap();
        let err = g.add_edge("e1", "e", "x", "y").unwrap_err();
        assert!(err.to_string().contains("e1"));
    }

    #[test]
    fn compose_pointwise() {
        let one = nodes_only(&["a"]);
        let two = nodes_only(&["p", "q"]);
        let three = nodes_only(&["x", "y", "z"]);
        let f = GraphMorphism::new(one.clone(), two.clone(), map(&[("a", "q")]), map(&[])).unwrap();
        let g = GraphMorphism::new(two, three, map(&[("p", "x"), ("q", "z")]), map(&[])).unwrap();
        let gf = compose(&g, &f).unwrap();
        assert_eq!(gf.node("a"), Some("z"));
        assert!(same_graph(gf.source(), &one));
    }

    #[test]
    fn compose_identities() {
        let g = path(&["a", "b"]);
        let h = path(&["x", "y", "z"]);
        let f = GraphMorphism::new(
            g.clone(),
            h.clone(),
            map(&[("a", "y"), ("b", "z")]),
            map(&[("ab", "yz")]),
        )
        .unwrap();
        assert_eq!(compose(&GraphMorphism::identity(h), &f).unwrap(), f);
        assert_eq!(compose(&f, &GraphMorphism::identity(g)).unwrap(), f);
    }

    #[test]
    fn compose_domain_mismatch() {
        let a = nodes_only(&["a"]);
        let b = nodes_only(&["b"]);
        let f = GraphMorphism::identity(a);
        let g = GraphMorphism::identity(b);
        assert!(matches!(compose(&g, &f), Err(Error::Composition(_))));
    }

    #[test]
    fn incidence_is_checked() {
        let g = path(&["a", "b"]);
        let h = path(&["x", "y"]);
        let err = GraphMorphism::new(g, h, map(&[("a", "y"), ("b", "x")]), map(&[("ab", "xy")]));
        assert!(err.is_err());
    }

    #[test]
    fn mono_detection() {
        let two = nodes_only(&["a", "b"]);
        let one = nodes_only(&["x"]);
        let collapse =
            GraphMorphism::new(two.clone(), one, map(&[("a", "x"), ("b", "x")]), map(&[])).unwrap();
        assert!(!collapse.is_mono());
        assert!(GraphMorphism::identity(two).is_mono());
    }

    #[test]
    fn disjoint_union_of_two_points() {
        let a = nodes_only(&["x"]);
        let b = nodes_only(&["x"]);
        let (sum, ia, ib) = disjoint_union(&a, &b).unwrap();
        assert_eq!(sum.node_count(), 2);
        assert!(ia.is_mono() && ib.is_mono());
        assert_ne!(ia.node("x"), ib.node("x"));
    }

    #[test]
    fn copair_recovers_legs() {
        let a = path(&["a", "b"]);
        let b = nodes_only(&["c"]);
        let x = path(&["x", "y"]);
        let (sum, ia, ib) = disjoint_union(&a, &b).unwrap();
        let f = GraphMorphism::identity(x.clone());
        let f = GraphMorphism::new(
            a.clone(),
            x.clone(),
            map(&[("a", "x"), ("b", "y")]),
            map(&[("ab", "xy")]),
        )
        .unwrap_or(f);
        let g = GraphMorphism::new(b, x, map(&[("c", "x")]), map(&[])).unwrap();
        let fg = copair(&sum, &f, &g).unwrap();
        assert_eq!(compose(&fg, &ia).unwrap(), f);
        assert_eq!(compose(&fg, &ib).unwrap(), g);
    }

    #[test]
    fn fresh_ids_prime_on_collision() {
        let mut ids = FreshIds::default();
        ids.reserve("po:x");
        assert_eq!(ids.fresh("po:x".into()), "po:x'");
        assert_eq!(ids.fresh("po:x".into()), "po:x''");
        assert_eq!(ids.fresh("y".into()), "y");
    }
}
