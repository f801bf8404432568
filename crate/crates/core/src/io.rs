//! JSON files for graphs and rule systems.
//!
//! A system file looks like
//!
//! ```json
//! {
//!   "sorts": {"nodes": ["place"], "edges": [{"name": "next", "src": "place", "tgt": "place"}]},
//!   "algebra": "nat",
//!   "rules": [{
//!     "name": "x:=y", "variables": ["u", "v"],
//!     "L": {"nodes": [{"id": "x", "sort": "place", "label": ["u"]}, ...], "edges": [...]},
//!     "K": {...}, "I": {...}, "R": {...},
//!     "l": {"nodes": {"x": "x", "y": "y"}, "edges": {"e": "e"}}, "i": {...}, "r": {...}
//!   }],
//!   "host": {"nodes": [...], "edges": [...]}
//! }
//! ```
//!
//! `algebra` is `"nat"`, `{"enum": [...]}` or `{"terms": [...]}`. Rules over
//! `nat` use the term algebra on their declared variables; rules over an
//! enumeration use the enumeration itself. A graph file has `sorts`,
//! `algebra`, `nodes` and `edges` at top level.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Value};
use crate::attr::{AttrGraph, AttrMorphism};
use crate::error::{Error, Result};
use crate::graph::{Element, Graph, Signature};
use crate::rewriting::WeakSpan;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SortsFile {
    pub nodes: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeSortFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSortFile {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraFile {
    Named(String),
    Enum {
        #[serde(rename = "enum")]
        values: Vec<String>,
    },
    Terms {
        terms: Vec<String>,
    },
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    #[serde(default)]
    pub nodes: Vec<NodeFile>,
    #[serde(default)]
    pub edges: Vec<EdgeFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeFile {
    pub id: String,
    pub sort: String,
    #[serde(default)]
    pub label: Vec<serde_json::Value>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeFile {
    pub id: String,
    pub sort: String,
    pub src: String,
    pub tgt: String,
    #[serde(default)]
    pub label: Vec<serde_json::Value>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    #[serde(default)]
    pub nodes: BTreeMap<String, String>,
    #[serde(default)]
    pub edges: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleFile {
    pub name: String,
    #[serde(default)]
    pub variables: Vec<String>,
    #[serde(rename = "L")]
    pub lhs: GraphFile,
    #[serde(rename = "K")]
    pub kept: GraphFile,
    #[serde(rename = "I")]
    pub interface: GraphFile,
    #[serde(rename = "R")]
    pub rhs: GraphFile,
    pub l: MapFile,
    pub i: MapFile,
    pub r: MapFile,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub sorts: SortsFile,
    pub algebra: AlgebraFile,
    #[serde(default)]
    pub rules: Vec<RuleFile>,
    #[serde(default)]
    pub host: Option<GraphFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub sorts: SortsFile,
    pub algebra: AlgebraFile,
    #[serde(default)]
    pub nodes: Vec<NodeFile>,
    #[serde(default)]
    pub edges: Vec<EdgeFile>,
}

/// A loaded rule system.
#[derive(Debug, Clone)]
pub struct SystemSpec {
    pub signature: Arc<Signature>,
    pub algebra: Arc<Algebra>,
    pub rules: Vec<Arc<WeakSpan>>,
    pub host: Option<Arc<AttrGraph>>,
}

impl SystemSpec {
    pub fn rule(&self, name: &str) -> Option<&Arc<WeakSpan>> {
        self.rules.iter().find(|r| r.name() == name)
    }

    pub fn require_host(&self) -> Result<&Arc<AttrGraph>> {
        self.host
            .as_ref()
            .ok_or_else(|| Error::Parse("system has no host graph".into()))
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, origin: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        Error::Parse(format!(
            "{origin}: line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn context(what: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::Parse(msg) => Error::Parse(format!("{what}: {msg}")),
        Error::InvalidGraph(msg) => Error::InvalidGraph(format!("{what}: {msg}")),
        Error::InvalidMorphism(msg) => Error::InvalidMorphism(format!("{what}: {msg}")),
        Error::NotInCarrier { value, algebra } => Error::NotInCarrier {
            value: format!("{value} in {what}"),
            algebra,
        },
        Error::Term(msg) => Error::Term(format!("{what}: {msg}")),
        other => other,
    }
}

pub fn signature_from_file(sorts: &SortsFile) -> Result<Arc<Signature>> {
    Ok(Arc::new(Signature::new(
        sorts.nodes.iter().cloned(),
        sorts
            .edges
            .iter()
            .map(|e| (e.name.clone(), e.src.clone(), e.tgt.clone())),
    )?))
}

pub fn algebra_from_file(a: &AlgebraFile) -> Result<Arc<Algebra>> {
    match a {
        AlgebraFile::Named(n) if n == "nat" => Ok(Algebra::nat()),
        AlgebraFile::Named(n) => Err(Error::Parse(format!(
            "unknown algebra `{n}` (expected \"nat\", {{\"enum\": [...]}} or {{\"terms\": [...]}})"
        ))),
        AlgebraFile::Enum { values } => Ok(Algebra::enumeration(values.iter().cloned())),
        AlgebraFile::Terms { terms } => Ok(Algebra::terms(terms.iter().cloned())),
    }
}

fn algebra_to_file(a: &Algebra) -> AlgebraFile {
    match a {
        Algebra::Nat => AlgebraFile::Named("nat".into()),
        Algebra::Enum(vals) => AlgebraFile::Enum {
            values: vals.iter().cloned().collect(),
        },
        Algebra::Terms { vars, .. } => AlgebraFile::Terms {
            terms: vars.iter().cloned().collect(),
        },
    }
}

fn sorts_to_file(s: &Signature) -> SortsFile {
    SortsFile {
        nodes: s.node_sorts().map(str::to_string).collect(),
        edges: s
            .edge_sorts()
            .map(|(name, e)| EdgeSortFile {
                name: name.to_string(),
                src: e.src.clone(),
                tgt: e.tgt.clone(),
            })
            .collect(),
    }
}

fn value_from_json(alg: &Algebra, v: &serde_json::Value) -> Result<Value> {
    match v {
        serde_json::Value::String(s) => alg.parse_value(s),
        serde_json::Value::Number(n) => alg.parse_value(&n.to_string()),
        other => Err(Error::Parse(format!(
            "label entries must be strings or numbers, got {other}"
        ))),
    }
}

fn value_to_json(v: &Value) -> serde_json::Value {
    match v {
        Value::Nat(n) => serde_json::Value::from(*n),
        Value::Sym(s) => serde_json::Value::from(s.clone()),
        Value::Term(t) => serde_json::Value::from(t.to_string()),
    }
}

/// Builds an attributed graph from its file form.
pub fn graph_from_file(
    file: &GraphFile,
    signature: &Arc<Signature>,
    algebra: &Arc<Algebra>,
) -> Result<Arc<AttrGraph>> {
    let mut g = Graph::new(signature.clone());
    let mut labels = BTreeMap::new();
    for n in &file.nodes {
        g.add_node(&n.id, &n.sort)?;
        let what = format!("node `{}`", n.id);
        let set = n
            .label
            .iter()
            .map(|v| value_from_json(algebra, v))
            .collect::<Result<_>>()
            .map_err(context(&what))?;
        labels.insert(Element::Node(n.id.clone()), set);
    }
    for e in &file.edges {
        g.add_edge(&e.id, &e.sort, &e.src, &e.tgt)?;
        let what = format!("edge `{}`", e.id);
        let set = e
            .label
            .iter()
            .map(|v| value_from_json(algebra, v))
            .collect::<Result<_>>()
            .map_err(context(&what))?;
        labels.insert(Element::Edge(e.id.clone()), set);
    }
    Ok(Arc::new(AttrGraph::new(
        Arc::new(g),
        algebra.clone(),
        labels,
    )?))
}

pub fn graph_to_file(g: &AttrGraph) -> GraphFile {
    let label = |e: Element| g.label(&e).iter().map(value_to_json).collect();
    GraphFile {
        nodes: g
            .graph()
            .nodes()
            .map(|(id, sort)| NodeFile {
                id: id.to_string(),
                sort: sort.to_string(),
                label: label(Element::Node(id.to_string())),
            })
            .collect(),
        edges: g
            .graph()
            .edges()
            .map(|(id, e)| EdgeFile {
                id: id.to_string(),
                sort: e.sort.clone(),
                src: e.src.clone(),
                tgt: e.tgt.clone(),
                label: label(Element::Edge(id.to_string())),
            })
            .collect(),
    }
}

fn rule_from_file(
    file: &RuleFile,
    signature: &Arc<Signature>,
    host_algebra: &Arc<Algebra>,
) -> Result<WeakSpan> {
    let algebra = match &**host_algebra {
        Algebra::Enum(_) | Algebra::Terms { .. } if file.variables.is_empty() => {
            host_algebra.clone()
        }
        Algebra::Enum(_) => {
            return Err(Error::InvalidRule {
                rule: file.name.clone(),
                reason: "rules over an enumerated algebra cannot declare variables".into(),
            })
        }
        _ => Algebra::terms(file.variables.iter().cloned()),
    };
    let graph = |g: &GraphFile, part: &str| {
        graph_from_file(g, signature, &algebra).map_err(|e| Error::InvalidRule {
            rule: file.name.clone(),
            reason: format!("{part}: {e}"),
        })
    };
    let (lhs, kept, interface, rhs) = (
        graph(&file.lhs, "L")?,
        graph(&file.kept, "K")?,
        graph(&file.interface, "I")?,
        graph(&file.rhs, "R")?,
    );
    let leg = |src: &Arc<AttrGraph>, tgt: &Arc<AttrGraph>, map: &MapFile, name: &str| {
        AttrMorphism::neutral(
            src.clone(),
            tgt.clone(),
            map.nodes.clone(),
            map.edges.clone(),
        )
        .map_err(|e| Error::InvalidRule {
            rule: file.name.clone(),
            reason: format!("leg {name}: {e}"),
        })
    };
    let l = leg(&kept, &lhs, &file.l, "l")?;
    let i = leg(&interface, &kept, &file.i, "i")?;
    let r = leg(&interface, &rhs, &file.r, "r")?;
    WeakSpan::new(file.name.clone(), l, i, r)
}

fn morphism_to_map(m: &AttrMorphism) -> MapFile {
    MapFile {
        nodes: m.sigma().node_map().clone(),
        edges: m.sigma().edge_map().clone(),
    }
}

pub fn rule_to_file(rule: &WeakSpan) -> RuleFile {
    RuleFile {
        name: rule.name().to_string(),
        variables: rule.variables().into_iter().collect(),
        lhs: graph_to_file(rule.lhs()),
        kept: graph_to_file(rule.kept()),
        interface: graph_to_file(rule.interface()),
        rhs: graph_to_file(rule.rhs()),
        l: morphism_to_map(rule.l()),
        i: morphism_to_map(rule.i()),
        r: morphism_to_map(rule.r()),
    }
}

pub fn parse_system(text: &str, origin: &str) -> Result<SystemSpec> {
    let file: SystemFile = parse_json(text, origin)?;
    let signature = signature_from_file(&file.sorts)?;
    let algebra = algebra_from_file(&file.algebra)?;
    let rules = file
        .rules
        .iter()
        .map(|r| rule_from_file(r, &signature, &algebra).map(Arc::new))
        .collect::<Result<_>>()?;
    let host = file
        .host
        .as_ref()
        .map(|h| graph_from_file(h, &signature, &algebra).map_err(context("host")))
        .transpose()?;
    Ok(SystemSpec {
        signature,
        algebra,
        rules,
        host,
    })
}

pub fn load_system(path: impl AsRef<Path>) -> Result<SystemSpec> {
    let path = path.as_ref();
    parse_system(&read(path)?, &path.display().to_string())
}

pub fn system_to_file(system: &SystemSpec) -> SystemFile {
    SystemFile {
        sorts: sorts_to_file(&system.signature),
        algebra: algebra_to_file(&system.algebra),
        rules: system.rules.iter().map(|r| rule_to_file(r)).collect(),
        host: system.host.as_ref().map(|h| graph_to_file(h)),
    }
}

pub fn parse_graph(text: &str, origin: &str) -> Result<Arc<AttrGraph>> {
    let doc: GraphDocument = parse_json(text, origin)?;
    let signature = signature_from_file(&doc.sorts)?;
    let algebra = algebra_from_file(&doc.algebra)?;
    let file = GraphFile {
        nodes: doc.nodes,
        edges: doc.edges,
    };
    graph_from_file(&file, &signature, &algebra).map_err(context(origin))
}

pub fn graph_to_json(g: &AttrGraph) -> String {
    let file = graph_to_file(g);
    let doc = GraphDocument {
        sorts: sorts_to_file(g.graph().signature()),
        algebra: algebra_to_file(g.algebra()),
        nodes: file.nodes,
        edges: file.edges,
    };
    serde_json::to_string_pretty(&doc).expect("graph documents always serialize")
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<Arc<AttrGraph>> {
    let path = path.as_ref();
    parse_graph(&read(path)?, &path.display().to_string())
}

/// Loads a graph file, or the host of a system file.
pub fn load_host(path: impl AsRef<Path>) -> Result<Arc<AttrGraph>> {
    let path = path.as_ref();
    let text = read(path)?;
    let origin = path.display().to_string();
    let probe: serde_json::Value = parse_json(&text, &origin)?;
    if probe.get("host").is_some() || probe.get("rules").is_some() {
        Ok(parse_system(&text, &origin)?.require_host()?.clone())
    } else {
        parse_graph(&text, &origin)
    }
}

pub fn save_graph(g: &AttrGraph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, graph_to_json(g) + "\n")
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// The two Fibonacci rules with host `(x:{1}) → (y:{2})`.
pub fn fibonacci_system() -> SystemSpec {
    parse_system(FIBONACCI, "fib.json").expect("bundled system is valid")
}

pub const FIBONACCI: &str = include_str!("../data/fib.json");
