//! Pushout, pullback and pushout complement of small attributed graphs,
//! with the universal property checked by brute force.
//!
//!     cargo run --example constructions

use std::collections::BTreeMap;
use std::sync::Arc;

use wdpo::algebra::{Algebra, Value};
use wdpo::attr::{AttrGraph, AttrMorphism};
use wdpo::constructions::{
    check_universal_property, pullback_of_neutrals, pushout_along_neutral, pushout_complement,
    Square, UniversalKind,
};
use wdpo::graph::{Element, Graph, Signature};

fn graph(nodes: &[(&str, &[&str])], edges: &[(&str, &str, &str)]) -> Arc<AttrGraph> {
    let alg = Algebra::enumeration(["a", "b", "c"]);
    let mut g = Graph::new(Signature::simple("place", "next"));
    let mut labels = BTreeMap::new();
    for (id, label) in nodes {
        g.add_node(*id, "place").unwrap();
        let set = label.iter().map(|s| Value::Sym(s.to_string())).collect();
        labels.insert(Element::Node(id.to_string()), set);
    }
    for (id, s, t) in edges {
        g.add_edge(*id, "next", *s, *t).unwrap();
    }
    Arc::new(AttrGraph::new(Arc::new(g), alg, labels).unwrap())
}

fn map(from: &Arc<AttrGraph>, to: &Arc<AttrGraph>, nodes: &[(&str, &str)]) -> AttrMorphism {
    let nodes = nodes
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    AttrMorphism::neutral(from.clone(), to.clone(), nodes, BTreeMap::new()).unwrap()
}

fn main() -> wdpo::Result<()> {
    // Glue an edge p -> q onto a node labelled {b} along the shared p.
    let f = graph(&[("p", &["a"])], &[]);
    let g = graph(&[("p", &["a"]), ("q", &["c"])], &[("e", "p", "q")]);
    let h = graph(&[("p", &["a", "b"])], &[]);
    let (fg, fh) = (map(&f, &g, &[("p", "p")]), map(&f, &h, &[("p", "p")]));
    let po = pushout_along_neutral(&fg, &fh)?;
    println!("pushout:  {}", po.apex);
    let square = Square::from_pushout(&fg, &fh, &po);
    let own = (&po.from_neutral_side, &po.from_other_side);
    println!(
        "  unique mediator into itself: {}",
        check_universal_property(UniversalKind::Pushout, &square, own)?
    );

    // Intersect two labellings of the same node.
    let target = graph(&[("p", &["a", "b", "c"])], &[]);
    let left = graph(&[("p", &["a", "b"])], &[]);
    let right = graph(&[("p", &["b", "c"])], &[]);
    let pb = pullback_of_neutrals(
        &map(&left, &target, &[("p", "p")]),
        &map(&right, &target, &[("p", "p")]),
    )?;
    println!("pullback: {}", pb.apex);

    // Remove q and the edge from the pushout, keeping p.
    let l = map(&f, &g, &[("p", "p")]);
    let c = pushout_complement(&l, &po.from_neutral_side)?;
    println!("complement of the edge in the pushout: {}", c.complement);
    for (w, removed) in &c.deletion_sets {
        println!("  labels read at {w}: {removed:?}");
    }
    Ok(())
}
