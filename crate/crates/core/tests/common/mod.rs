//! Random small instances and brute-force oracles shared by the integration
//! tests.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wdpo::algebra::{Algebra, AlgebraMorphism, LabelSet, Term, Value};
use wdpo::attr::{is_attr_isomorphic, AttrGraph, AttrMorphism};
use wdpo::constructions::{pushout_along_neutral, pushout_complement};
use wdpo::graph::{Element, Graph, Signature};
use wdpo::rewriting::{find_matches, Match, WeakSpan};
use wdpo::Result;

pub fn sig() -> Arc<Signature> {
    Signature::simple("place", "next")
}

/// A graph under construction: nodes, edges `(id, src, tgt)` and labels.
#[derive(Debug, Clone, Default)]
pub struct Sketch {
    pub nodes: Vec<String>,
    pub edges: Vec<(String, String, String)>,
    pub labels: BTreeMap<Element, LabelSet>,
}

impl Sketch {
    pub fn len(&self) -> usize {
        self.nodes.len() + self.edges.len()
    }

    pub fn elements(&self) -> Vec<Element> {
        let nodes = self.nodes.iter().map(|n| Element::Node(n.clone()));
        let edges = self.edges.iter().map(|(e, _, _)| Element::Edge(e.clone()));
        nodes.chain(edges).collect()
    }

    pub fn label(&self, e: &Element) -> LabelSet {
        self.labels.get(e).cloned().unwrap_or_default()
    }

    pub fn build(&self, alg: &Arc<Algebra>) -> Arc<AttrGraph> {
        let mut g = Graph::new(sig());
        for n in &self.nodes {
            g.add_node(n.clone(), "place").unwrap();
        }
        for (e, s, t) in &self.edges {
            g.add_edge(e.clone(), "next", s.clone(), t.clone()).unwrap();
        }
        Arc::new(AttrGraph::new(Arc::new(g), alg.clone(), self.labels.clone()).unwrap())
    }
}

/// The neutral inclusion of a graph into one with a superset of its ids.
pub fn inclusion(small: &Arc<AttrGraph>, big: &Arc<AttrGraph>) -> AttrMorphism {
    let nodes = small
        .graph()
        .nodes()
        .map(|(n, _)| (n.to_string(), n.to_string()))
        .collect();
    let edges = small
        .graph()
        .edges()
        .map(|(e, _)| (e.to_string(), e.to_string()))
        .collect();
    AttrMorphism::neutral(small.clone(), big.clone(), nodes, edges).unwrap()
}

/// Label values rules and hosts draw from.
#[derive(Debug, Clone)]
pub enum Flavour {
    /// Rules and host over the enumeration `{a, b, c}`.
    Enum,
    /// Rules over terms in `u`, `v`; host over the naturals.
    Terms,
}

pub struct Gen {
    pub rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn pick<'a, T>(&mut self, xs: &'a [T]) -> &'a T {
        xs.choose(&mut self.rng).unwrap()
    }

    pub fn subset(&mut self, pool: &[Value], p: f64) -> LabelSet {
        pool.iter()
            .filter(|_| self.rng.gen_bool(p))
            .cloned()
            .collect()
    }

    /// A random graph with the given id prefix.
    pub fn graph(
        &mut self,
        prefix: &str,
        max_nodes: usize,
        max_elements: usize,
        pool: &[Value],
        p: f64,
    ) -> Sketch {
        let mut s = Sketch::default();
        let n = self.rng.gen_range(1..=max_nodes.min(max_elements));
        for k in 0..n {
            s.nodes.push(format!("{prefix}{k}"));
        }
        let m = self.rng.gen_range(0..=max_elements - n);
        for k in 0..m {
            let src = self.pick(&s.nodes).clone();
            let tgt = self.pick(&s.nodes).clone();
            s.edges.push((format!("{prefix}e{k}"), src, tgt));
        }
        for e in s.elements() {
            let l = self.subset(pool, p);
            s.labels.insert(e, l);
        }
        s
    }

    /// A random subgraph keeping ids, each label shrunk to a random subset.
    pub fn sub(&mut self, s: &Sketch) -> Sketch {
        let mut out = Sketch::default();
        out.nodes = s.nodes.iter().filter(|_| self.coin(0.7)).cloned().collect();
        out.edges = s
            .edges
            .iter()
            .filter(|(_, a, b)| out.nodes.contains(a) && out.nodes.contains(b))
            .filter(|_| self.coin(0.7))
            .cloned()
            .collect();
        for e in out.elements() {
            let full: Vec<Value> = s.label(&e).into_iter().collect();
            let l = self.subset(&full, 0.6);
            out.labels.insert(e, l);
        }
        out
    }

    /// A random supergraph with at most `max_elements` elements: labels
    /// grow, new elements get ids starting with `prefix`.
    pub fn sup(
        &mut self,
        s: &Sketch,
        prefix: &str,
        max_elements: usize,
        pool: &[Value],
        p: f64,
    ) -> Sketch {
        let mut out = s.clone();
        let room = max_elements.saturating_sub(s.len());
        let extra = if room == 0 {
            0
        } else {
            self.rng.gen_range(0..=room)
        };
        for k in 0..extra {
            if out.nodes.is_empty() || self.coin(0.5) {
                out.nodes.push(format!("{prefix}{k}"));
            } else {
                let src = self.pick(&out.nodes).clone();
                let tgt = self.pick(&out.nodes).clone();
                out.edges.push((format!("{prefix}e{k}"), src, tgt));
            }
        }
        for e in out.elements() {
            let mut l = out.label(&e);
            l.extend(self.subset(pool, p));
            out.labels.insert(e, l);
        }
        out
    }
}

pub fn sym(s: &str) -> Value {
    Value::Sym(s.into())
}

pub fn term(s: &str) -> Value {
    Value::Term(Term::parse(s).unwrap())
}

pub fn enum_pool() -> Vec<Value> {
    ["a", "b", "c"].iter().map(|s| sym(s)).collect()
}

pub fn nat_pool() -> Vec<Value> {
    (1..=4).map(Value::Nat).collect()
}

/// A random weak span with `|L| ≤ 3` and `|R| ≤ 4`.
pub fn random_rule(gen: &mut Gen, name: &str, flavour: &Flavour) -> Arc<WeakSpan> {
    let (alg, pool, vars) = match flavour {
        Flavour::Enum => (Algebra::enumeration(["a", "b", "c"]), enum_pool(), vec![]),
        Flavour::Terms => {
            let vars: Vec<&str> = match gen.below(3) {
                0 => vec!["u"],
                1 => vec!["v"],
                _ => vec!["u", "v"],
            };
            let mut pool: Vec<Value> = vars.iter().map(|v| term(v)).collect();
            for a in &vars {
                for b in &vars {
                    pool.push(term(&format!("{a}+{b}")));
                }
            }
            (Algebra::terms(vars.clone()), pool, vars)
        }
    };
    let mut l = gen.graph("n", 2, 3, &pool, 0.3);
    for v in vars {
        let at = gen.pick(&l.elements()).clone();
        l.labels.get_mut(&at).unwrap().insert(term(v));
    }
    let k = gen.sub(&l);
    let i = gen.sub(&k);
    let r = gen.sup(&i, "r", 4, &pool, 0.3);
    let (lg, kg, ig, rg) = (l.build(&alg), k.build(&alg), i.build(&alg), r.build(&alg));
    WeakSpan::new(
        name,
        inclusion(&kg, &lg),
        inclusion(&ig, &kg),
        inclusion(&ig, &rg),
    )
    .map(Arc::new)
    .unwrap()
}

/// Values a rule's variables may take in a host.
fn host_values(flavour: &Flavour) -> (Arc<Algebra>, Vec<Value>) {
    match flavour {
        Flavour::Enum => (Algebra::enumeration(["a", "b", "c"]), enum_pool()),
        Flavour::Terms => (Algebra::nat(), nat_pool()),
    }
}

/// A host of at most 5 elements built around a copy of `L`, so the rule
/// has at least one match.
pub fn random_host(gen: &mut Gen, rule: &WeakSpan, flavour: &Flavour) -> Arc<AttrGraph> {
    let (alg, pool) = host_values(flavour);
    let rename = |id: &str| format!("g{id}");
    let lhs = rule.lhs();
    let alpha = match flavour {
        Flavour::Enum => AlgebraMorphism::identity(alg.clone()),
        Flavour::Terms => {
            let map = rule
                .variables()
                .into_iter()
                .map(|v| (v, gen.pick(&pool).clone()))
                .collect();
            AlgebraMorphism::assignment(rule.algebra().clone(), alg.clone(), map).unwrap()
        }
    };
    let mut s = Sketch::default();
    for (n, _) in lhs.graph().nodes() {
        s.nodes.push(rename(n));
    }
    for (e, edge) in lhs.graph().edges() {
        s.edges
            .push((rename(e), rename(&edge.src), rename(&edge.tgt)));
    }
    for (e, label) in lhs.labels() {
        let image = match e {
            Element::Node(n) => Element::Node(rename(n)),
            Element::Edge(n) => Element::Edge(rename(n)),
        };
        let values: LabelSet = label.iter().map(|v| alpha.apply(v).unwrap()).collect();
        s.labels.insert(image, values);
    }
    gen.sup(&s, "h", 5, &pool, 0.4).build(&alg)
}

/// A host of at most 5 elements with rich labels, for pairs of rules.
pub fn random_shared_host(gen: &mut Gen, flavour: &Flavour) -> Arc<AttrGraph> {
    let (alg, pool) = host_values(flavour);
    gen.graph("g", 3, 5, &pool, 0.6).build(&alg)
}

pub fn matches_of(rule: &Arc<WeakSpan>, host: &Arc<AttrGraph>) -> Vec<Match> {
    find_matches(rule, host).unwrap()
}

pub fn iso(a: &Arc<AttrGraph>, b: &Arc<AttrGraph>) -> bool {
    is_attr_isomorphic(a, b).is_some()
}

/// The smallest admissible label of each kept element in a pushout
/// complement of `l` and `m`, computed from the definition:
/// `(g(w) \ ∪ α(L(x)) for m(x) = w) ∪ ∪ α(K(y)) for m(l(y)) = w`.
/// Keys are host elements.
pub fn maximal_deletion_labels(l: &AttrMorphism, m: &AttrMorphism) -> BTreeMap<Element, LabelSet> {
    let host = m.target();
    let alpha = m.alpha();
    let image = |s: &LabelSet| -> LabelSet { s.iter().map(|v| alpha.apply(v).unwrap()).collect() };
    let mut read: BTreeMap<Element, LabelSet> = BTreeMap::new();
    for (x, label) in m.source().labels() {
        read.entry(m.apply(x).unwrap())
            .or_default()
            .extend(image(label));
    }
    let mut out: BTreeMap<Element, LabelSet> = BTreeMap::new();
    for (y, label) in l.source().labels() {
        let w = m.apply(&l.apply(y).unwrap()).unwrap();
        let base = out
            .entry(w.clone())
            .or_insert_with(|| host.label(&w).difference(&read[&w]).cloned().collect());
        base.extend(image(label));
    }
    out
}

/// Every admissible pushout complement of `rule.l()` and `m`, each pushed
/// out along `r`: the results of all direct transformations of `m`, one per
/// choice of deleted labels. The graph part is the one the library builds.
pub fn all_admissible_results(rule: &WeakSpan, m: &AttrMorphism) -> Result<Vec<Arc<AttrGraph>>> {
    let c = pushout_complement(rule.l(), m)?;
    let d = &c.complement;
    let f = &c.complement_to_host;
    let lower_by_host = maximal_deletion_labels(rule.l(), m);
    let mut choices: Vec<(Element, LabelSet, Vec<Value>)> = Vec::new();
    let mut fixed: BTreeMap<Element, LabelSet> = BTreeMap::new();
    for w in d.graph().elements() {
        let g = m.target().label(&f.apply(&w).unwrap()).clone();
        match lower_by_host.get(&f.apply(&w).unwrap()) {
            Some(lower) if is_kept_image(&c.kept_to_complement, &w) => {
                let free = g.difference(lower).cloned().collect();
                choices.push((w, lower.clone(), free));
            }
            _ => {
                fixed.insert(w, g);
            }
        }
    }
    let mut out = Vec::new();
    let total: usize = choices.iter().map(|(_, _, f)| f.len()).sum();
    assert!(total <= 12, "too many admissible complements to enumerate");
    for mask in 0u32..(1 << total) {
        let mut labels = fixed.clone();
        let mut bit = 0;
        for (w, lower, free) in &choices {
            let mut l = lower.clone();
            for v in free {
                if mask & (1 << bit) != 0 {
                    l.insert(v.clone());
                }
                bit += 1;
            }
            labels.insert(w.clone(), l);
        }
        let d2 = Arc::new(AttrGraph::new(
            d.graph().clone(),
            d.algebra().clone(),
            labels,
        )?);
        let k2 = AttrMorphism::new(
            rule.kept().clone(),
            d2,
            c.kept_to_complement.sigma().clone(),
            c.kept_to_complement.alpha().clone(),
        )?;
        let ki = wdpo::attr::compose_attr(&k2, rule.i())?;
        out.push(pushout_along_neutral(rule.r(), &ki)?.apex);
    }
    Ok(out)
}

fn is_kept_image(k: &AttrMorphism, w: &Element) -> bool {
    k.source()
        .graph()
        .elements()
        .any(|y| k.apply(&y).as_ref() == Some(w))
}
