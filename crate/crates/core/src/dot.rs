//! Graphviz DOT export.

use std::fmt::Write;

use crate::forest::{Origin, RedundancyForest};
use crate::tree::LoadedTree;

fn label_list(labels: impl Iterator<Item = u32>) -> String {
    labels.map(|l| l.to_string()).collect::<Vec<_>>().join(",")
}

/// Vertices labelled by their label sets, edges by multiplicity.
pub fn tree_to_dot(t: &LoadedTree, name: &str) -> String {
    let mut s = format!("graph \"{}\" {{\n  node [shape=box];\n", escape(name));
    for v in 0..t.vertex_count() {
        let _ = writeln!(s, "  v{v} [label=\"{{{}}}\"];", label_list(t.labels(v).iter()));
    }
    for e in t.edges() {
        let _ = writeln!(s, "  v{} -- v{} [label=\"{}\"];", e.ends.0, e.ends.1, e.multiplicity);
    }
    s.push_str("}\n");
    s
}

/// Nodes labelled by weight; edge midpoints are drawn as circles.
pub fn forest_to_dot(f: &RedundancyForest, name: &str) -> String {
    let mut s = format!("graph \"{}\" {{\n", escape(name));
    for (i, node) in f.nodes().iter().enumerate() {
        let (shape, tag) = match node.origin {
            Origin::Vertex(v) => ("box", format!("v{v}")),
            Origin::Edge(e) => ("circle", format!("e{e}")),
        };
        let _ = writeln!(s, "  n{i} [shape={shape}, label=\"{tag}: {}\"];", node.weight);
    }
    for (a, b) in f.edges() {
        let _ = writeln!(s, "  n{a} -- n{b};");
    }
    s.push_str("}\n");
    s
}

fn escape(name: &str) -> String {
    name.replace('\\', "\\\\").replace('"', "\\\"")
}
