//! Graphviz rendering of attributed graphs.

use std::fmt::Write as _;
use std::path::Path;

use crate::algebra::LabelSet;
use crate::attr::AttrGraph;
use crate::error::{Error, Result};
use crate::graph::Element;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", escape(s))
}

fn set(label: &LabelSet) -> String {
    let items: Vec<String> = label.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// Nodes show their id and label set; edges show their sort, followed by
/// the label set when it is not empty. Output order follows ids.
pub fn export_dot(g: &AttrGraph) -> String {
    let mut out = String::from("digraph G {\n  node [shape=box];\n");
    for (id, sort) in g.graph().nodes() {
        let label = set(g.node_label(id));
        let text = format!("\"{} : {}\\n{}\"", escape(id), escape(sort), escape(&label));
        writeln!(out, "  {} [label={}];", quote(id), text).unwrap();
    }
    for (id, e) in g.graph().edges() {
        let label = g.label(&Element::Edge(id.to_string()));
        let text = if label.is_empty() {
            e.sort.clone()
        } else {
            format!("{} {}", e.sort, set(label))
        };
        writeln!(
            out,
            "  {} -> {} [label={}, id={}];",
            quote(&e.src),
            quote(&e.tgt),
            quote(&text),
            quote(id)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn write_dot(g: &AttrGraph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, export_dot(g)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
