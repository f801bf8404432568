//! Limits and colimits of finitely attributed graphs.
//!
//! The graph part of every construction is the usual one for sorted graphs
//! (quotient of a disjoint union, fibred product). Labels are then
//! determined elementwise:
//!
//! * pushout along a neutral leg: the union of the images of all labels
//!   glued into an element;
//! * pullback of two neutral legs: the intersection of the labels of the
//!   two projections;
//! * pushout complement: the host label, minus what the match reads
//!   through the left-hand side, plus what the kept part still requires.
//!
//! Fresh ids are deterministic. A pushout keeps the ids of the non-neutral
//! side and names the other new elements `po:<id>`; a pullback keeps an id
//! shared by both projections and otherwise writes the pair `⟨a,b⟩`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use crate::algebra::{apply_to_labelset, AlgebraMorphism, LabelSet};
use crate::attr::{compose_attr, same_attr, validate_attr_morphism, AttrGraph, AttrMorphism};
use crate::error::{Error, Result};
use crate::graph::{Edge, Element, FreshIds, Graph, GraphMorphism};
use crate::search::enumerate_morphisms;

/// Largest graph (nodes plus edges) the universal-property oracle accepts.
pub const ORACLE_MAX_ELEMENTS: usize = 6;

#[derive(Debug, Clone)]
pub struct PushoutResult {
    pub apex: Arc<AttrGraph>,
    /// From the target of the neutral leg; carries the other leg's algebra
    /// morphism.
    pub from_neutral_side: AttrMorphism,
    /// From the target of the other leg; always neutral.
    pub from_other_side: AttrMorphism,
}

#[derive(Debug, Clone)]
pub struct PullbackResult {
    pub apex: Arc<AttrGraph>,
    pub to_first: AttrMorphism,
    pub to_second: AttrMorphism,
}

#[derive(Debug, Clone)]
pub struct ComplementResult {
    pub complement: Arc<AttrGraph>,
    /// From the kept part of the rule into the complement.
    pub kept_to_complement: AttrMorphism,
    /// Inclusion of the complement into the host; neutral.
    pub complement_to_host: AttrMorphism,
    /// Labels removed from each element the match touches.
    pub deletion_sets: BTreeMap<Element, LabelSet>,
}

#[derive(Debug, Clone)]
pub struct Cone {
    pub apex: Arc<AttrGraph>,
    pub legs: Vec<AttrMorphism>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }
}

/// Gluing of two id spaces: `left` ids come first, then `right` ids.
struct Quotient {
    left: Vec<String>,
    right: Vec<String>,
    uf: UnionFind,
}

impl Quotient {
    fn new<'a>(left: impl Iterator<Item = &'a str>, right: impl Iterator<Item = &'a str>) -> Self {
        let left: Vec<String> = left.map(str::to_string).collect();
        let right: Vec<String> = right.map(str::to_string).collect();
        let uf = UnionFind::new(left.len() + right.len());
        Quotient { left, right, uf }
    }

    fn glue(&mut self, l: &str, r: &str) {
        let li = self.left.binary_search_by(|x| x.as_str().cmp(l)).unwrap();
        let ri = self.right.binary_search_by(|x| x.as_str().cmp(r)).unwrap();
        self.uf.union(li, self.left.len() + ri);
    }

    /// Names every class; returns (left id → name, right id → name).
    fn name_classes(
        mut self,
        fresh: &mut FreshIds,
    ) -> (BTreeMap<String, String>, BTreeMap<String, String>) {
        let n = self.left.len();
        let total = n + self.right.len();
        let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..total {
            members.entry(self.uf.find(i)).or_default().push(i);
        }
        let mut name_of_class: HashMap<usize, String> = HashMap::new();
        // Classes touching the right-hand side keep the smallest right id.
        for (root, ms) in &members {
            if let Some(&r) = ms.iter().find(|&&i| i >= n) {
                let id = self.right[r - n].clone();
                fresh.reserve(&id);
                name_of_class.insert(*root, id);
            }
        }
        for (root, ms) in &members {
            if !name_of_class.contains_key(root) {
                let id = fresh.fresh(format!("po:{}", self.left[ms[0]]));
                name_of_class.insert(*root, id);
            }
        }
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for i in 0..total {
            let name = name_of_class[&self.uf.find(i)].clone();
            if i < n {
                left.insert(self.left[i].clone(), name);
            } else {
                right.insert(self.right[i - n].clone(), name);
            }
        }
        (left, right)
    }
}

/// Graph pushout of `first: F → G` and `second: F → H`. Returns the apex
/// with the maps out of `G` and out of `H`.
pub(crate) fn graph_pushout(
    first: &GraphMorphism,
    second: &GraphMorphism,
) -> Result<(Arc<Graph>, GraphMorphism, GraphMorphism)> {
    let (g, h) = (first.target(), second.target());
    if !g.same_signature(h) {
        return Err(Error::SignatureMismatch);
    }
    let mut nodes = Quotient::new(g.nodes().map(|(n, _)| n), h.nodes().map(|(n, _)| n));
    let mut edges = Quotient::new(g.edges().map(|(e, _)| e), h.edges().map(|(e, _)| e));
    for (f, a) in first.node_map() {
        nodes.glue(a, &second.node_map()[f]);
    }
    for (f, a) in first.edge_map() {
        edges.glue(a, &second.edge_map()[f]);
    }
    let (gn, hn) = nodes.name_classes(&mut FreshIds::default());
    let (ge, he) = edges.name_classes(&mut FreshIds::default());

    let mut apex = Graph::new(g.signature().clone());
    let mut add_nodes = BTreeMap::new();
    for (src, map) in [(g, &gn), (h, &hn)] {
        for (n, s) in src.nodes() {
            add_nodes.insert(map[n].clone(), s.to_string());
        }
    }
    for (id, sort) in add_nodes {
        apex.add_node(id, sort)?;
    }
    let mut add_edges: BTreeMap<String, Edge> = BTreeMap::new();
    for (src, nmap, emap) in [(g, &gn, &ge), (h, &hn, &he)] {
        for (e, edge) in src.edges() {
            add_edges.entry(emap[e].clone()).or_insert_with(|| Edge {
                sort: edge.sort.clone(),
                src: nmap[&edge.src].clone(),
                tgt: nmap[&edge.tgt].clone(),
            });
        }
    }
    for (id, e) in add_edges {
        apex.add_edge(id, e.sort, e.src, e.tgt)?;
    }
    let apex = Arc::new(apex);
    let from_g = GraphMorphism::new(g.clone(), apex.clone(), gn, ge)?;
    let from_h = GraphMorphism::new(h.clone(), apex.clone(), hn, he)?;
    Ok((apex, from_g, from_h))
}

/// Pushout of a neutral morphism `F → G` and an arbitrary `F → H`.
///
/// The apex lives over the algebra of `H`; each of its elements is labelled
/// with the union of the images of everything glued into it.
pub fn pushout_along_neutral(
    neutral: &AttrMorphism,
    other: &AttrMorphism,
) -> Result<PushoutResult> {
    if !neutral.is_neutral() {
        return Err(Error::NotNeutral("first pushout leg".into()));
    }
    if !same_attr(neutral.source(), other.source()) {
        return Err(Error::Composition(
            "pushout legs do not share a source".into(),
        ));
    }
    let alpha = other.alpha();
    let (g, h) = (neutral.target(), other.target());
    let (graph, from_g, from_h) = graph_pushout(neutral.sigma(), other.sigma())?;

    let mut labels: BTreeMap<Element, LabelSet> =
        graph.elements().map(|e| (e, LabelSet::new())).collect();
    for (v, label) in g.labels() {
        let x = from_g.apply(v).unwrap();
        labels
            .get_mut(&x)
            .unwrap()
            .extend(apply_to_labelset(alpha, label)?);
    }
    for (w, label) in h.labels() {
        let x = from_h.apply(w).unwrap();
        labels.get_mut(&x).unwrap().extend(label.iter().cloned());
    }
    let apex = Arc::new(AttrGraph::new_unchecked(graph, h.algebra().clone(), labels));
    let from_neutral_side = AttrMorphism::new(g.clone(), apex.clone(), from_g, alpha.clone())?;
    let from_other_side = AttrMorphism::new(
        h.clone(),
        apex.clone(),
        from_h,
        AlgebraMorphism::identity(h.algebra().clone()),
    )?;
    Ok(PushoutResult {
        apex,
        from_neutral_side,
        from_other_side,
    })
}

/// Pullback of two neutral morphisms with a common target.
pub fn pullback_of_neutrals(first: &AttrMorphism, second: &AttrMorphism) -> Result<PullbackResult> {
    for (name, f) in [("first", first), ("second", second)] {
        if !f.is_neutral() {
            return Err(Error::NotNeutral(format!("{name} pullback leg")));
        }
    }
    if !crate::algebra::same_algebra(first.source().algebra(), second.source().algebra()) {
        return Err(Error::AlgebraMismatch(
            "pullback legs are over different algebras".into(),
        ));
    }
    if !same_attr(first.target(), second.target()) {
        return Err(Error::Composition(
            "pullback legs do not share a target".into(),
        ));
    }
    let (g, h) = (first.source(), second.source());
    let by_image = |m: &GraphMorphism, nodes: bool| {
        let mut idx: HashMap<String, Vec<String>> = HashMap::new();
        let map = if nodes { m.node_map() } else { m.edge_map() };
        for (a, b) in map {
            idx.entry(b.clone()).or_default().push(a.clone());
        }
        idx
    };

    let pairs = |nodes: bool| -> Vec<(String, String)> {
        let idx = by_image(second.sigma(), nodes);
        let map = if nodes {
            first.sigma().node_map()
        } else {
            first.sigma().edge_map()
        };
        let mut out = Vec::new();
        for (a, img) in map {
            for b in idx.get(img).into_iter().flatten() {
                out.push((a.clone(), b.clone()));
            }
        }
        out.sort();
        out
    };
    let name_pairs = |ps: &[(String, String)]| {
        let mut fresh = FreshIds::default();
        let mut names = BTreeMap::new();
        for (a, b) in ps.iter().filter(|(a, b)| a == b) {
            fresh.reserve(a);
            names.insert((a.clone(), b.clone()), a.clone());
        }
        for (a, b) in ps.iter().filter(|(a, b)| a != b) {
            names.insert((a.clone(), b.clone()), fresh.fresh(format!("⟨{a},{b}⟩")));
        }
        names
    };
    let node_pairs = pairs(true);
    let edge_pairs = pairs(false);
    let node_names = name_pairs(&node_pairs);
    let edge_names = name_pairs(&edge_pairs);

    let mut graph = Graph::new(g.graph().signature().clone());
    for (a, b) in &node_pairs {
        graph.add_node(
            node_names[&(a.clone(), b.clone())].clone(),
            g.graph().node_sort(a).unwrap(),
        )?;
    }
    for (a, b) in &edge_pairs {
        let (ea, eb) = (g.graph().edge(a).unwrap(), h.graph().edge(b).unwrap());
        graph.add_edge(
            edge_names[&(a.clone(), b.clone())].clone(),
            ea.sort.clone(),
            node_names[&(ea.src.clone(), eb.src.clone())].clone(),
            node_names[&(ea.tgt.clone(), eb.tgt.clone())].clone(),
        )?;
    }
    let graph = Arc::new(graph);

    let mut labels = BTreeMap::new();
    let (mut pn1, mut pn2, mut pe1, mut pe2) = (
        BTreeMap::new(),
        BTreeMap::new(),
        BTreeMap::new(),
        BTreeMap::new(),
    );
    for ((a, b), id) in &node_names {
        let l = g
            .node_label(a)
            .intersection(h.node_label(b))
            .cloned()
            .collect();
        labels.insert(Element::Node(id.clone()), l);
        pn1.insert(id.clone(), a.clone());
        pn2.insert(id.clone(), b.clone());
    }
    for ((a, b), id) in &edge_names {
        let la = g.label(&Element::Edge(a.clone()));
        let lb = h.label(&Element::Edge(b.clone()));
        labels.insert(
            Element::Edge(id.clone()),
            la.intersection(lb).cloned().collect(),
        );
        pe1.insert(id.clone(), a.clone());
        pe2.insert(id.clone(), b.clone());
    }
    let apex = Arc::new(AttrGraph::new_unchecked(graph, g.algebra().clone(), labels));
    let to_first = AttrMorphism::neutral(apex.clone(), g.clone(), pn1, pe1)?;
    let to_second = AttrMorphism::neutral(apex.clone(), h.clone(), pn2, pe2)?;
    Ok(PullbackResult {
        apex,
        to_first,
        to_second,
    })
}

/// Limit of a family of neutral morphisms into a common object, built as
/// left-associated iterated pullbacks.
pub fn limit_of_neutrals(legs: &[AttrMorphism]) -> Result<Cone> {
    let (first, rest) = legs.split_first().ok_or(Error::EmptyLegs)?;
    for (i, f) in legs.iter().enumerate() {
        if !f.is_neutral() {
            return Err(Error::NotNeutral(format!("limit leg {i}")));
        }
        if !same_attr(f.target(), first.target()) {
            return Err(Error::Composition(format!(
                "limit leg {i} has a different target"
            )));
        }
    }
    // Pull back one leg at a time, remembering each projection; the cone
    // legs are composed once at the end, along the chain of projections.
    let mut apex = first.source().clone();
    let mut to_target = first.clone();
    let mut steps: Vec<PullbackResult> = Vec::with_capacity(rest.len());
    for f in rest {
        let pb = pullback_of_neutrals(&to_target, f)?;
        to_target = compose_attr(&to_target, &pb.to_first)?;
        apex = pb.apex.clone();
        steps.push(pb);
    }
    let mut down = AttrMorphism::identity(apex.clone());
    let mut cone = Vec::with_capacity(legs.len());
    for pb in steps.iter().rev() {
        cone.push(compose_attr(&pb.to_second, &down)?);
        down = compose_attr(&pb.to_first, &down)?;
    }
    cone.push(down);
    cone.reverse();
    Ok(Cone { apex, legs: cone })
}

/// Colimit of a family of neutral morphisms out of a common object, built
/// as left-associated iterated pushouts.
pub fn colimit_of_neutrals(legs: &[AttrMorphism]) -> Result<Cone> {
    let (first, rest) = legs.split_first().ok_or(Error::EmptyLegs)?;
    for (i, g) in legs.iter().enumerate() {
        if !g.is_neutral() {
            return Err(Error::NotNeutral(format!("colimit leg {i}")));
        }
        if !same_attr(g.source(), first.source()) {
            return Err(Error::Composition(format!(
                "colimit leg {i} has a different source"
            )));
        }
    }
    let mut apex = first.target().clone();
    let mut from_source = first.clone();
    let mut steps: Vec<PushoutResult> = Vec::with_capacity(rest.len());
    for g in rest {
        let po = pushout_along_neutral(g, &from_source)?;
        from_source = compose_attr(&po.from_other_side, &from_source)?;
        apex = po.apex.clone();
        steps.push(po);
    }
    let mut up = AttrMorphism::identity(apex.clone());
    let mut cocone = Vec::with_capacity(legs.len());
    for po in steps.iter().rev() {
        cocone.push(compose_attr(&up, &po.from_neutral_side)?);
        up = compose_attr(&up, &po.from_other_side)?;
    }
    cocone.push(up);
    cocone.reverse();
    Ok(Cone { apex, legs: cocone })
}

/// Pushout complement of a neutral mono `l: K → L` and a match `m: L → G`.
///
/// Deletes at graph level everything matched by `L` but not by `K`. On the
/// kept elements the deleted labels are the maximal admissible ones: every
/// value the match reads through `L`.
pub fn pushout_complement(l: &AttrMorphism, m: &AttrMorphism) -> Result<ComplementResult> {
    if !l.is_neutral() {
        return Err(Error::NotNeutral("rule leg K → L".into()));
    }
    if !l.is_mono() {
        return Err(Error::NotMono("rule leg K → L".into()));
    }
    if !same_attr(l.target(), m.source()) {
        return Err(Error::Composition(
            "match does not start at the rule's left-hand side".into(),
        ));
    }
    let (kept, lhs, host) = (l.source(), l.target(), m.target());
    let alpha = m.alpha();

    let preserved: BTreeSet<Element> = kept
        .graph()
        .elements()
        .map(|e| l.apply(&e).unwrap())
        .collect();
    let mut matched: BTreeMap<Element, Vec<Element>> = BTreeMap::new();
    for e in lhs.graph().elements() {
        matched.entry(m.apply(&e).unwrap()).or_default().push(e);
    }
    // Identification: elements glued by the match must all be preserved.
    for pre in matched.values() {
        if pre.len() > 1 {
            if let Some(bad) = pre.iter().find(|e| !preserved.contains(e)) {
                let other = pre.iter().find(|e| *e != bad).unwrap();
                return Err(Error::Identification {
                    first: bad.clone(),
                    second: other.clone(),
                });
            }
        }
    }
    let deleted: BTreeSet<Element> = matched
        .iter()
        .filter(|(_, pre)| pre.iter().all(|e| !preserved.contains(e)))
        .map(|(img, _)| img.clone())
        .collect();
    for (id, edge) in host.graph().edges() {
        if deleted.contains(&Element::Edge(id.to_string())) {
            continue;
        }
        for end in [&edge.src, &edge.tgt] {
            if deleted.contains(&Element::Node(end.clone())) {
                return Err(Error::Dangling {
                    edge: id.to_string(),
                    node: end.clone(),
                });
            }
        }
    }
    // A deleted element may only carry what the match reads there, or
    // the pushout of `l` and `k` cannot give its label back.
    for d in &deleted {
        let mut read = LabelSet::new();
        for v in &matched[d] {
            read.extend(apply_to_labelset(alpha, lhs.label(v))?);
        }
        let unread: Vec<String> = host
            .label(d)
            .difference(&read)
            .map(ToString::to_string)
            .collect();
        if !unread.is_empty() {
            return Err(Error::UnreadLabels {
                element: d.clone(),
                values: unread.join(", "),
            });
        }
    }

    let mut graph = Graph::new(host.graph().signature().clone());
    for (n, s) in host.graph().nodes() {
        if !deleted.contains(&Element::Node(n.to_string())) {
            graph.add_node(n, s)?;
        }
    }
    for (id, e) in host.graph().edges() {
        if !deleted.contains(&Element::Edge(id.to_string())) {
            graph.add_edge(id, e.sort.clone(), e.src.clone(), e.tgt.clone())?;
        }
    }
    let graph = Arc::new(graph);

    let mut deletion_sets = BTreeMap::new();
    let mut labels = BTreeMap::new();
    for w in graph.elements() {
        let mut removed = LabelSet::new();
        for v in matched.get(&w).into_iter().flatten() {
            removed.extend(apply_to_labelset(alpha, lhs.label(v))?);
        }
        let mut label: LabelSet = host.label(&w).difference(&removed).cloned().collect();
        if matched.contains_key(&w) {
            deletion_sets.insert(w.clone(), removed);
        }
        labels.insert(w, std::mem::take(&mut label));
    }
    let kept_map = |e: &Element| m.apply(&l.apply(e).unwrap()).unwrap();
    for u in kept.graph().elements() {
        let w = kept_map(&u);
        let add = apply_to_labelset(alpha, kept.label(&u))?;
        labels.get_mut(&w).unwrap().extend(add);
    }
    let complement = Arc::new(AttrGraph::new_unchecked(
        graph.clone(),
        host.algebra().clone(),
        labels,
    ));

    let mut kn = BTreeMap::new();
    let mut ke = BTreeMap::new();
    for u in kept.graph().elements() {
        match (kept_map(&u), &u) {
            (Element::Node(w), Element::Node(id)) => kn.insert(id.clone(), w),
            (Element::Edge(w), Element::Edge(id)) => ke.insert(id.clone(), w),
            _ => unreachable!("graph morphisms preserve element kinds"),
        };
    }
    let kept_to_complement =
        AttrMorphism::from_maps(kept.clone(), complement.clone(), kn, ke, alpha.clone())?;
    let incl_n = graph
        .nodes()
        .map(|(n, _)| (n.to_string(), n.to_string()))
        .collect();
    let incl_e = graph
        .edges()
        .map(|(e, _)| (e.to_string(), e.to_string()))
        .collect();
    let complement_to_host =
        AttrMorphism::neutral(complement.clone(), host.clone(), incl_n, incl_e)?;
    Ok(ComplementResult {
        complement,
        kept_to_complement,
        complement_to_host,
        deletion_sets,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UniversalKind {
    Pushout,
    Pullback,
}

/// A claimed pushout or pullback square.
///
/// For a pushout, `base` is the span `F → G`, `F → H` and `legs` the cocone
/// `G → E`, `H → E`. For a pullback, `base` is the cospan `G → F`, `H → F`
/// and `legs` the cone `E → G`, `E → H`.
#[derive(Debug, Clone)]
pub struct Square {
    pub base: (AttrMorphism, AttrMorphism),
    pub legs: (AttrMorphism, AttrMorphism),
}

impl Square {
    pub fn from_pushout(neutral: &AttrMorphism, other: &AttrMorphism, po: &PushoutResult) -> Self {
        Square {
            base: (neutral.clone(), other.clone()),
            legs: (po.from_neutral_side.clone(), po.from_other_side.clone()),
        }
    }

    pub fn from_pullback(first: &AttrMorphism, second: &AttrMorphism, pb: &PullbackResult) -> Self {
        Square {
            base: (first.clone(), second.clone()),
            legs: (pb.to_first.clone(), pb.to_second.clone()),
        }
    }

    fn apex(&self, kind: UniversalKind) -> &Arc<AttrGraph> {
        match kind {
            UniversalKind::Pushout => self.legs.0.target(),
            UniversalKind::Pullback => self.legs.0.source(),
        }
    }
}

fn commutes(
    kind: UniversalKind,
    base: &(AttrMorphism, AttrMorphism),
    legs: (&AttrMorphism, &AttrMorphism),
) -> Result<bool> {
    Ok(match kind {
        UniversalKind::Pushout => compose_attr(legs.0, &base.0)? == compose_attr(legs.1, &base.1)?,
        UniversalKind::Pullback => compose_attr(&base.0, legs.0)? == compose_attr(&base.1, legs.1)?,
    })
}

/// Number of mediating morphisms between the square's apex and a candidate
/// (co)cone, found by exhaustive enumeration of graph morphisms.
pub fn count_mediators(
    kind: UniversalKind,
    square: &Square,
    candidate: (&AttrMorphism, &AttrMorphism),
) -> Result<usize> {
    let apex = square.apex(kind).clone();
    let vertex = match kind {
        UniversalKind::Pushout => candidate.0.target().clone(),
        UniversalKind::Pullback => candidate.0.source().clone(),
    };
    for g in [&apex, &vertex] {
        if g.element_count() > ORACLE_MAX_ELEMENTS {
            return Err(Error::SizeBound {
                limit: ORACLE_MAX_ELEMENTS,
                actual: g.element_count(),
            });
        }
    }
    if !commutes(kind, &square.base, (&square.legs.0, &square.legs.1))? {
        return Err(Error::InvalidMorphism("square does not commute".into()));
    }
    if !commutes(kind, &square.base, candidate)? {
        return Err(Error::InvalidMorphism("candidate does not commute".into()));
    }
    // The algebra part of a mediator is forced by a neutral leg.
    let alpha = match kind {
        UniversalKind::Pushout if square.legs.1.is_neutral() => candidate.1.alpha().clone(),
        UniversalKind::Pushout if square.legs.0.is_neutral() => candidate.0.alpha().clone(),
        UniversalKind::Pullback if square.legs.0.is_neutral() => candidate.0.alpha().clone(),
        UniversalKind::Pullback if square.legs.1.is_neutral() => candidate.1.alpha().clone(),
        _ => return Err(Error::NotNeutral("one leg of the square".into())),
    };
    let (from, to) = match kind {
        UniversalKind::Pushout => (apex, vertex),
        UniversalKind::Pullback => (vertex, apex),
    };
    let mut count = 0;
    for sigma in enumerate_morphisms(from.graph(), to.graph(), false)? {
        let chi = AttrMorphism::from_parts(from.clone(), to.clone(), sigma, alpha.clone());
        if !validate_attr_morphism(&chi).is_valid() {
            continue;
        }
        let ok = match kind {
            UniversalKind::Pushout => {
                compose_attr(&chi, &square.legs.0)? == *candidate.0
                    && compose_attr(&chi, &square.legs.1)? == *candidate.1
            }
            UniversalKind::Pullback => {
                compose_attr(&square.legs.0, &chi)? == *candidate.0
                    && compose_attr(&square.legs.1, &chi)? == *candidate.1
            }
        };
        if ok {
            count += 1;
        }
    }
    Ok(count)
}

/// True iff exactly one mediating morphism exists.
pub fn check_universal_property(
    kind: UniversalKind,
    square: &Square,
    candidate: (&AttrMorphism, &AttrMorphism),
) -> Result<bool> {
    Ok(count_mediators(kind, square, candidate)? == 1)
}
