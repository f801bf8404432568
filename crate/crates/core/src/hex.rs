//! The Hex-Ulam-Warburton automaton as a rule system.
//!
//! Cells of a hexagonal grid of a given radius are nodes of sort `cell`,
//! named `c(q,r)` after their axial coordinates. Neighbours are linked by
//! an edge of sort `dir<k>` one way and `dir<k+3>` the other. A cell is
//! labelled `{1}` when live and `{0}` when dead. A dead cell is born when
//! exactly one of its six neighbours is live; live cells stay live.
//!
//! The rule looks at a dead centre with its six neighbours, one of them
//! live, and relabels the centre `{1}`. It comes in six variants, one per
//! direction of the live neighbour.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::algebra::{Algebra, LabelSet, Value};
use crate::attr::{AttrGraph, AttrMorphism};
use crate::error::{Error, Result};
use crate::graph::{Element, Graph, Signature};
use crate::rewriting::WeakSpan;
use crate::run::{cmd_run, Mode, StepReport};

pub type Cell = (i32, i32);

/// Axial offsets; direction `k + 3` is opposite to `k`.
pub const DIRECTIONS: [Cell; 6] = [(1, 0), (1, -1), (0, -1), (-1, 0), (-1, 1), (0, 1)];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HexGridSpec {
    pub radius: u32,
    pub seeds: Vec<Cell>,
}

impl HexGridSpec {
    /// A single live cell at the origin.
    pub fn origin(radius: u32) -> Self {
        HexGridSpec {
            radius,
            seeds: vec![(0, 0)],
        }
    }

    pub fn contains(&self, (q, r): Cell) -> bool {
        let d = q.abs().max(r.abs()).max((q + r).abs());
        d as u32 <= self.radius
    }

    /// All cells of the grid, in lexicographic order.
    pub fn cells(&self) -> Vec<Cell> {
        let n = self.radius as i32;
        let mut out = Vec::new();
        for q in -n..=n {
            for r in -n..=n {
                if self.contains((q, r)) {
                    out.push((q, r));
                }
            }
        }
        out
    }
}

pub fn neighbour((q, r): Cell, dir: usize) -> Cell {
    let (dq, dr) = DIRECTIONS[dir % 6];
    (q + dq, r + dr)
}

pub fn cell_id((q, r): Cell) -> String {
    format!("c({q},{r})")
}

pub fn parse_cell_id(id: &str) -> Option<Cell> {
    let inner = id.strip_prefix("c(")?.strip_suffix(')')?;
    let (q, r) = inner.split_once(',')?;
    Some((q.trim().parse().ok()?, r.trim().parse().ok()?))
}

pub fn signature() -> Arc<Signature> {
    let edges = (0..6).map(|k| (format!("dir{k}"), "cell".to_string(), "cell".to_string()));
    Arc::new(Signature::new(["cell"], edges).expect("hex signature is well-formed"))
}

/// The label algebra `{0, 1}`.
pub fn algebra() -> Arc<Algebra> {
    Algebra::enumeration(["0", "1"])
}

fn state(live: bool) -> LabelSet {
    [Value::Sym(if live { "1" } else { "0" }.into())].into()
}

/// Encodes the grid with the given live cells.
pub fn encode_grid(spec: &HexGridSpec, live: &BTreeSet<Cell>) -> Result<Arc<AttrGraph>> {
    let mut g = Graph::new(signature());
    let mut labels = BTreeMap::new();
    let cells = spec.cells();
    for &c in &cells {
        g.add_node(cell_id(c), "cell")?;
        labels.insert(Element::Node(cell_id(c)), state(live.contains(&c)));
    }
    for &c in &cells {
        for k in 0..6 {
            let n = neighbour(c, k);
            if spec.contains(n) {
                let id = format!("{}>{k}", cell_id(c));
                g.add_edge(id, format!("dir{k}"), cell_id(c), cell_id(n))?;
            }
        }
    }
    Ok(Arc::new(AttrGraph::new(Arc::new(g), algebra(), labels)?))
}

/// Cells labelled live.
pub fn live_cells(g: &AttrGraph) -> BTreeSet<Cell> {
    let live = Value::Sym("1".into());
    g.graph()
        .nodes()
        .filter(|(id, _)| g.node_label(id).contains(&live))
        .filter_map(|(id, _)| parse_cell_id(id))
        .collect()
}

/// The birth rule with its live neighbour in direction `k`.
pub fn huw_rule(k: usize) -> Result<WeakSpan> {
    let alg = algebra();
    let sig = signature();
    let centre = "c";
    let patch = |centre_label: LabelSet| -> Result<Arc<AttrGraph>> {
        let mut g = Graph::new(sig.clone());
        let mut labels = BTreeMap::new();
        g.add_node(centre, "cell")?;
        labels.insert(Element::Node(centre.into()), centre_label);
        for j in 0..6 {
            let n = format!("n{j}");
            g.add_node(&n, "cell")?;
            labels.insert(Element::Node(n.clone()), state(j == 0));
            g.add_edge(format!("c>n{j}"), format!("dir{}", (j + k) % 6), centre, &n)?;
            g.add_edge(
                format!("n{j}>c"),
                format!("dir{}", (j + k + 3) % 6),
                &n,
                centre,
            )?;
        }
        Ok(Arc::new(AttrGraph::new(Arc::new(g), alg.clone(), labels)?))
    };
    let single = |label: LabelSet| -> Result<Arc<AttrGraph>> {
        let mut g = Graph::new(sig.clone());
        g.add_node(centre, "cell")?;
        let labels = BTreeMap::from([(Element::Node(centre.into()), label)]);
        Ok(Arc::new(AttrGraph::new(Arc::new(g), alg.clone(), labels)?))
    };
    let lhs = patch(state(false))?;
    let kept = patch(LabelSet::new())?;
    let interface = single(LabelSet::new())?;
    let rhs = single(state(true))?;
    let identity_on = |g: &AttrGraph| -> (BTreeMap<String, String>, BTreeMap<String, String>) {
        (
            g.graph()
                .nodes()
                .map(|(n, _)| (n.to_string(), n.to_string()))
                .collect(),
            g.graph()
                .edges()
                .map(|(e, _)| (e.to_string(), e.to_string()))
                .collect(),
        )
    };
    let (nodes, edges) = identity_on(&kept);
    let l = AttrMorphism::neutral(kept.clone(), lhs, nodes, edges)?;
    let centre_only = BTreeMap::from([(centre.to_string(), centre.to_string())]);
    let i = AttrMorphism::neutral(
        interface.clone(),
        kept,
        centre_only.clone(),
        BTreeMap::new(),
    )?;
    let r = AttrMorphism::neutral(interface, rhs, centre_only, BTreeMap::new())?;
    WeakSpan::new(format!("birth{k}"), l, i, r)
}

/// The six rotations of the birth rule.
pub fn huw_rules() -> Result<Vec<Arc<WeakSpan>>> {
    (0..6).map(|k| huw_rule(k).map(Arc::new)).collect()
}

#[derive(Debug, Clone)]
pub struct HexRun {
    pub graphs: Vec<Arc<AttrGraph>>,
    /// Live cells per generation, starting with the seeds.
    pub live: Vec<BTreeSet<Cell>>,
    pub reports: Vec<StepReport>,
}

impl HexRun {
    pub fn live_counts(&self) -> Vec<usize> {
        self.live.iter().map(BTreeSet::len).collect()
    }
}

/// Runs the automaton for `generations` parallel steps. The radius must
/// leave every cell that can be born a full ring of neighbours.
pub fn cmd_hexca(spec: &HexGridSpec, generations: u32) -> Result<HexRun> {
    if spec.radius < generations + 1 {
        return Err(Error::Margin {
            radius: spec.radius,
            generations,
        });
    }
    if let Some(&c) = spec.seeds.iter().find(|&&c| !spec.contains(c)) {
        return Err(Error::InvalidGraph(format!(
            "seed {} lies outside the grid",
            cell_id(c)
        )));
    }
    let host = encode_grid(spec, &spec.seeds.iter().copied().collect())?;
    let rules = huw_rules()?;
    let out = cmd_run(&rules, &host, generations as usize, Mode::Pct)?;
    let live = out.graphs.iter().map(|g| live_cells(g)).collect();
    Ok(HexRun {
        graphs: out.graphs,
        live,
        reports: out.reports,
    })
}

/// Plain set iteration of the automaton on an unbounded grid, for checking
/// [`cmd_hexca`].
pub fn ca_oracle(spec: &HexGridSpec, generations: u32) -> Vec<BTreeSet<Cell>> {
    let mut gens = vec![spec.seeds.iter().copied().collect::<BTreeSet<Cell>>()];
    for _ in 0..generations {
        let live = gens.last().unwrap();
        let mut next = live.clone();
        for &c in live {
            for k in 0..6 {
                let cand = neighbour(c, k);
                if live.contains(&cand) {
                    continue;
                }
                let count = (0..6)
                    .filter(|&j| live.contains(&neighbour(cand, j)))
                    .count();
                if count == 1 {
                    next.insert(cand);
                }
            }
        }
        gens.push(next);
    }
    gens
}
