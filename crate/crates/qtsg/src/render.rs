//! Text and Graphviz renderings of derived trees.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use qtsg_core::{stretched_nodes, DerivedTree, Workspace};

/// Mark on nodes that realize one half of a stretched quasi-node.
pub const STRETCH_MARK: char = '⇕';

/// Derived nodes touched by a stretched quasi-node, paired top to bottom.
pub fn stretch_edges(tree: &DerivedTree, ws: &Workspace) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for n in stretched_nodes(tree, ws) {
        let wn = &ws.nodes()[n];
        if let (Some(t), Some(b)) = (wn.top, wn.bottom) {
            if let (Some(u), Some(l)) = (tree.node_of(t), tree.node_of(b)) {
                out.push((u, l));
            }
        }
    }
    out.sort_unstable();
    out
}

fn label(tree: &DerivedTree, i: usize) -> String {
    let n = &tree.nodes()[i];
    let mut s = n.category.clone();
    if !n.features.is_empty() {
        let _ = write!(s, " {}", n.features);
    }
    if let Some(a) = &n.anchor {
        let _ = write!(s, " \"{}\"", a.join(" "));
    }
    s
}

/// Indented outline, one node per line.
pub fn ascii(tree: &DerivedTree, ws: &Workspace) -> String {
    let marked: BTreeSet<usize> = stretch_edges(tree, ws)
        .into_iter()
        .flat_map(|(u, l)| [u, l])
        .collect();
    let mut out = String::new();
    for (i, _) in tree.nodes().iter().enumerate() {
        let _ = write!(out, "{}{}", "  ".repeat(tree.depth(i)), label(tree, i));
        if marked.contains(&i) {
            let _ = write!(out, " {STRETCH_MARK}");
        }
        out.push('\n');
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// A Graphviz digraph: solid tree edges, and a dashed non-constraining
/// edge from the upper to the lower realization of each stretched node.
pub fn dot(tree: &DerivedTree, ws: &Workspace, name: &str) -> String {
    let mut out = format!("digraph \"{}\" {{\n", escape(name));
    out.push_str("  node [shape=plaintext];\n");
    for i in 0..tree.len() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape(&label(tree, i)));
    }
    for (i, n) in tree.nodes().iter().enumerate() {
        for &c in &n.children {
            let _ = writeln!(out, "  n{i} -> n{c};");
        }
    }
    for (u, l) in stretch_edges(tree, ws) {
        let _ = writeln!(out, "  n{u} -> n{l} [style=dashed, constraint=false, arrowhead=none];");
    }
    out.push_str("}\n");
    out
}
