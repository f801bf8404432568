//! Backtracking search for graph morphisms.
//!
//! Nodes are assigned first, in an order that keeps each new pattern node
//! adjacent to an already-assigned one whenever the pattern allows it, so
//! candidates come from the image's adjacency instead of the whole host.
//! Edges are assigned afterwards, bucket by bucket.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphMorphism};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum MapKind {
    Any,
    Injective,
    Bijective,
}

type Maps = (BTreeMap<String, String>, BTreeMap<String, String>);

struct PatternEdge<'g> {
    id: &'g str,
    sort: &'g str,
    src: usize,
    tgt: usize,
}

struct Plan<'g> {
    order: Vec<usize>,
    names: Vec<&'g str>,
    sorts: Vec<&'g str>,
    edges: Vec<PatternEdge<'g>>,
    /// Per position in `order`: pattern edges whose endpoints are both
    /// assigned once this position is filled.
    closing: Vec<Vec<usize>>,
    /// Per position in `order`: one closing edge to draw candidates from.
    anchor: Vec<Option<usize>>,
    degree: Vec<BTreeMap<(&'g str, bool), usize>>,
}

impl<'g> Plan<'g> {
    fn new(pattern: &'g Graph) -> Self {
        let names: Vec<&str> = pattern.nodes().map(|(n, _)| n).collect();
        let sorts: Vec<&str> = pattern.nodes().map(|(_, s)| s).collect();
        let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (*n, i)).collect();
        let edges: Vec<PatternEdge> = pattern
            .edges()
            .map(|(id, e)| PatternEdge {
                id,
                sort: &e.sort,
                src: index[e.src.as_str()],
                tgt: index[e.tgt.as_str()],
            })
            .collect();
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); names.len()];
        let mut degree = vec![BTreeMap::new(); names.len()];
        for e in &edges {
            adj[e.src].insert(e.tgt);
            adj[e.tgt].insert(e.src);
            *degree[e.src].entry((e.sort, true)).or_insert(0) += 1;
            *degree[e.tgt].entry((e.sort, false)).or_insert(0) += 1;
        }

        // Connected-first order, ties broken by id.
        let mut placed = vec![false; names.len()];
        let mut frontier = BTreeSet::new();
        let mut order = Vec::with_capacity(names.len());
        while order.len() < names.len() {
            let next = match frontier.iter().next() {
                Some(&n) => n,
                None => (0..names.len()).find(|&n| !placed[n]).unwrap(),
            };
            frontier.remove(&next);
            placed[next] = true;
            order.push(next);
            for &m in &adj[next] {
                if !placed[m] {
                    frontier.insert(m);
                }
            }
        }

        let mut position = vec![0; names.len()];
        for (pos, &n) in order.iter().enumerate() {
            position[n] = pos;
        }
        let mut closing = vec![Vec::new(); names.len()];
        let mut anchor = vec![None; names.len()];
        for (i, e) in edges.iter().enumerate() {
            let pos = position[e.src].max(position[e.tgt]);
            closing[pos].push(i);
            if e.src != e.tgt && anchor[pos].is_none() {
                anchor[pos] = Some(i);
            }
        }
        Plan {
            order,
            names,
            sorts,
            edges,
            closing,
            anchor,
            degree,
        }
    }
}

struct HostIndex<'g> {
    by_sort: HashMap<&'g str, Vec<&'g str>>,
    out: HashMap<(&'g str, &'g str), Vec<&'g str>>,
    inc: HashMap<(&'g str, &'g str), Vec<&'g str>>,
    bucket: HashMap<(&'g str, &'g str, &'g str), Vec<&'g str>>,
    degree: HashMap<&'g str, BTreeMap<(&'g str, bool), usize>>,
}

impl<'g> HostIndex<'g> {
    fn new(host: &'g Graph) -> Self {
        let mut idx = HostIndex {
            by_sort: HashMap::new(),
            out: HashMap::new(),
            inc: HashMap::new(),
            bucket: HashMap::new(),
            degree: HashMap::new(),
        };
        for (n, s) in host.nodes() {
            idx.by_sort.entry(s).or_default().push(n);
            idx.degree.insert(n, BTreeMap::new());
        }
        for (id, e) in host.edges() {
            let (src, tgt, sort) = (e.src.as_str(), e.tgt.as_str(), e.sort.as_str());
            idx.out.entry((src, sort)).or_default().push(tgt);
            idx.inc.entry((tgt, sort)).or_default().push(src);
            idx.bucket.entry((src, tgt, sort)).or_default().push(id);
            *idx.degree
                .get_mut(src)
                .unwrap()
                .entry((sort, true))
                .or_insert(0) += 1;
            *idx.degree
                .get_mut(tgt)
                .unwrap()
                .entry((sort, false))
                .or_insert(0) += 1;
        }
        for v in idx.out.values_mut().chain(idx.inc.values_mut()) {
            v.sort_unstable();
            v.dedup();
        }
        idx
    }
}

pub(crate) struct Search<'a> {
    pub pattern: &'a Graph,
    pub host: &'a Graph,
    pub kind: MapKind,
    pub node_ok: &'a dyn Fn(&str, &str) -> bool,
    pub edge_ok: &'a dyn Fn(&str, &str) -> bool,
}

impl Search<'_> {
    /// Calls `visit` with every morphism found; stops when it returns false.
    pub(crate) fn run(&self, visit: &mut dyn FnMut(&Maps) -> bool) {
        if !self.pattern.same_signature(self.host) {
            return;
        }
        if self.kind == MapKind::Bijective && !same_shape_counts(self.pattern, self.host) {
            return;
        }
        let plan = Plan::new(self.pattern);
        let host = HostIndex::new(self.host);
        let mut state = State {
            image: vec![None; plan.names.len()],
            used: BTreeSet::new(),
            edge_image: BTreeMap::new(),
            used_edges: BTreeSet::new(),
        };
        let mut ctx = Ctx {
            search: self,
            plan: &plan,
            host: &host,
            visit,
        };
        ctx.assign_node(0, &mut state);
    }
}

fn same_shape_counts(a: &Graph, b: &Graph) -> bool {
    let count = |g: &Graph| {
        let mut nodes: BTreeMap<String, usize> = BTreeMap::new();
        let mut edges: BTreeMap<String, usize> = BTreeMap::new();
        for (_, s) in g.nodes() {
            *nodes.entry(s.to_string()).or_default() += 1;
        }
        for (_, e) in g.edges() {
            *edges.entry(e.sort.clone()).or_default() += 1;
        }
        (nodes, edges)
    };
    count(a) == count(b)
}

struct State<'g> {
    image: Vec<Option<&'g str>>,
    used: BTreeSet<&'g str>,
    edge_image: BTreeMap<&'g str, &'g str>,
    used_edges: BTreeSet<&'g str>,
}

struct Ctx<'a, 'g> {
    search: &'a Search<'g>,
    plan: &'a Plan<'g>,
    host: &'a HostIndex<'g>,
    visit: &'a mut dyn FnMut(&Maps) -> bool,
}

impl<'g> Ctx<'_, 'g> {
    fn injective(&self) -> bool {
        self.search.kind != MapKind::Any
    }

    /// Returns false when the visitor asked to stop.
    fn assign_node(&mut self, pos: usize, st: &mut State<'g>) -> bool {
        if pos == self.plan.order.len() {
            return self.assign_edge(0, st);
        }
        let p = self.plan.order[pos];
        let sort = self.plan.sorts[p];
        let empty = Vec::new();
        let mut candidates: Vec<&'g str> = match self.plan.anchor[pos] {
            Some(ei) => {
                let e = &self.plan.edges[ei];
                if e.src == p {
                    let t = st.image[e.tgt].unwrap();
                    self.host.inc.get(&(t, e.sort)).unwrap_or(&empty).clone()
                } else {
                    let s = st.image[e.src].unwrap();
                    self.host.out.get(&(s, e.sort)).unwrap_or(&empty).clone()
                }
            }
            None => self.host.by_sort.get(sort).unwrap_or(&empty).clone(),
        };
        candidates.sort_unstable();
        for c in candidates {
            if self.injective() && st.used.contains(c) {
                continue;
            }
            if self.search.host.node_sort(c) != Some(sort) {
                continue;
            }
            if !self.degree_fits(p, c) || !(self.search.node_ok)(self.plan.names[p], c) {
                continue;
            }
            st.image[p] = Some(c);
            if self.closing_edges_fit(pos, st) {
                if self.injective() {
                    st.used.insert(c);
                }
                let go_on = self.assign_node(pos + 1, st);
                if self.injective() {
                    st.used.remove(c);
                }
                if !go_on {
                    st.image[p] = None;
                    return false;
                }
            }
            st.image[p] = None;
        }
        true
    }

    fn degree_fits(&self, p: usize, c: &str) -> bool {
        let host = &self.host.degree[c];
        let pat = &self.plan.degree[p];
        match self.search.kind {
            MapKind::Any => pat.keys().all(|k| host.contains_key(k)),
            MapKind::Injective => pat.iter().all(|(k, n)| host.get(k).is_some_and(|h| h >= n)),
            MapKind::Bijective => pat == host,
        }
    }

    fn closing_edges_fit(&self, pos: usize, st: &State<'g>) -> bool {
        let mut need: BTreeMap<(&str, &str, &str), usize> = BTreeMap::new();
        for &ei in &self.plan.closing[pos] {
            let e = &self.plan.edges[ei];
            let key = (st.image[e.src].unwrap(), st.image[e.tgt].unwrap(), e.sort);
            *need.entry(key).or_default() += 1;
        }
        need.into_iter()
            .all(|(key, n)| match self.host.bucket.get(&key) {
                None => false,
                Some(b) => !self.injective() || b.len() >= n,
            })
    }

    fn assign_edge(&mut self, i: usize, st: &mut State<'g>) -> bool {
        if i == self.plan.edges.len() {
            let nodes = self
                .plan
                .names
                .iter()
                .zip(&st.image)
                .map(|(p, h)| (p.to_string(), h.unwrap().to_string()))
                .collect();
            let edges = st
                .edge_image
                .iter()
                .map(|(p, h)| (p.to_string(), h.to_string()))
                .collect();
            return (self.visit)(&(nodes, edges));
        }
        let e = &self.plan.edges[i];
        let key = (st.image[e.src].unwrap(), st.image[e.tgt].unwrap(), e.sort);
        let Some(bucket) = self.host.bucket.get(&key) else {
            return true;
        };
        let mut bucket = bucket.clone();
        bucket.sort_unstable();
        for c in bucket {
            if self.injective() && st.used_edges.contains(c) {
                continue;
            }
            if !(self.search.edge_ok)(e.id, c) {
                continue;
            }
            st.edge_image.insert(e.id, c);
            if self.injective() {
                st.used_edges.insert(c);
            }
            let go_on = self.assign_edge(i + 1, st);
            if self.injective() {
                st.used_edges.remove(c);
            }
            st.edge_image.remove(e.id);
            if !go_on {
                return false;
            }
        }
        true
    }
}

fn accept_all(_: &str, _: &str) -> bool {
    true
}

pub(crate) fn canonical_key(m: &Maps) -> (Vec<String>, Vec<String>) {
    (
        m.0.values().cloned().collect(),
        m.1.values().cloned().collect(),
    )
}

/// Every morphism `pattern → host` (only injective ones when asked), in
/// lexicographic order of node images, then edge images, taken in id order
/// of the pattern.
pub fn enumerate_morphisms(
    pattern: &Arc<Graph>,
    host: &Arc<Graph>,
    injective_only: bool,
) -> Result<Vec<GraphMorphism>> {
    if !pattern.same_signature(host) {
        return Err(Error::SignatureMismatch);
    }
    let mut found = Vec::new();
    Search {
        pattern,
        host,
        kind: if injective_only {
            MapKind::Injective
        } else {
            MapKind::Any
        },
        node_ok: &accept_all,
        edge_ok: &accept_all,
    }
    .run(&mut |m| {
        found.push(m.clone());
        true
    });
    found.sort_by_cached_key(canonical_key);
    Ok(found
        .into_iter()
        .map(|(n, e)| GraphMorphism::new_unchecked(pattern.clone(), host.clone(), n, e))
        .collect())
}

/// A sort- and incidence-preserving bijection `a → b`, if one exists.
///
/// When `a` and `b` are the same value the identity is returned.
pub fn is_isomorphic(a: &Arc<Graph>, b: &Arc<Graph>) -> Option<GraphMorphism> {
    if !a.same_signature(b) {
        return None;
    }
    if **a == **b {
        return Some(
            GraphMorphism::identity(a.clone())
                .rebase(a.clone(), b.clone())
                .ok()?,
        );
    }
    let mut found = None;
    Search {
        pattern: a,
        host: b,
        kind: MapKind::Bijective,
        node_ok: &accept_all,
        edge_ok: &accept_all,
    }
    .run(&mut |m| {
        found = Some(m.clone());
        false
    });
    found.map(|(n, e)| GraphMorphism::new_unchecked(a.clone(), b.clone(), n, e))
}
