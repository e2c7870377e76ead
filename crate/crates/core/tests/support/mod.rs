//! Random quasi-tree workspaces of at most six quasi-nodes.
//!
//! Shared by the core property tests and the acceptance suite.
#![allow(dead_code)]

use proptest::prelude::*;
use qtsg_core::{feats, HalfRef, NodeKind, QuasiTree, Workspace};

#[derive(Clone, Debug)]
pub struct NodeSpec {
    pub kind: u8,
    pub cat: u8,
    pub parent: u8,
    pub under_top: bool,
    pub anchor: bool,
    pub ftop: u8,
    pub fbot: u8,
}

pub fn node_spec() -> impl Strategy<Value = NodeSpec> {
    (0u8..4, 0u8..2, any::<u8>(), prop::bool::weighted(0.2), any::<bool>(), 0u8..4, 0u8..4).prop_map(
        |(kind, cat, parent, under_top, anchor, ftop, fbot)| NodeSpec {
            kind,
            cat,
            parent,
            under_top,
            anchor,
            ftop,
            fbot,
        },
    )
}

pub fn feature(k: u8) -> qtsg_core::FeatureSet {
    match k {
        1 => feats(&[("c", "1")]),
        2 => feats(&[("c", "2")]),
        3 => feats(&[("d", "1")]),
        _ => feats(&[]),
    }
}

/// Builds one quasi-tree; node 0 may be of any kind, later nodes are full
/// or open tops hanging from an earlier node.
pub fn build_tree(name: &str, specs: &[NodeSpec]) -> Option<QuasiTree> {
    let mut t = QuasiTree::new(name);
    let words = ["a", "b"];
    for (i, s) in specs.iter().enumerate() {
        let cat = ["A", "B"][s.cat as usize];
        let kind = match (i, s.kind) {
            (0, 2) => NodeKind::OpenBottom,
            (_, 1) => NodeKind::OpenTop,
            _ => NodeKind::Full,
        };
        let n = t.add_node(&format!("n{i}"), cat, kind);
        if kind.has(qtsg_core::Side::Top) {
            t.set_features(HalfRef::top(n), feature(s.ftop));
        }
        if kind.has(qtsg_core::Side::Bottom) {
            t.set_features(HalfRef::bottom(n), feature(s.fbot));
        }
        if i > 0 {
            let p = s.parent as usize % i;
            let pk = t.nodes[p].kind;
            let side = if (s.under_top || !pk.has(qtsg_core::Side::Bottom)) && pk.has(qtsg_core::Side::Top) {
                HalfRef::top(p)
            } else {
                HalfRef::bottom(p)
            };
            let pos = t.children_of(side).len();
            t.add_edge(side, n, pos);
        }
    }
    // Anchor the leaves that asked for it, and at least one.
    let leaves: Vec<usize> = (0..specs.len())
        .filter(|&i| t.nodes[i].kind.has(qtsg_core::Side::Bottom))
        .filter(|&i| t.children_of(HalfRef::bottom(i)).is_empty() && t.children_of(HalfRef::top(i)).is_empty())
        .collect();
    let mut any = false;
    for &i in &leaves {
        if specs[i].anchor {
            t.anchor(i, words[specs[i].cat as usize]);
            any = true;
        }
    }
    if !any {
        t.anchor(*leaves.first()?, "x");
    }
    t.validate().ok()?;
    Some(t)
}

pub fn workspace() -> impl Strategy<Value = Option<Workspace>> {
    prop::collection::vec(prop::collection::vec(node_spec(), 1..=3), 1..=3).prop_map(|trees| {
        let mut total = 0;
        let mut ws = Workspace::new();
        for (k, specs) in trees.iter().enumerate() {
            let take = specs.len().min(6 - total);
            if take == 0 {
                break;
            }
            total += take;
            ws.instantiate(&build_tree(&format!("t{k}"), &specs[..take])?);
        }
        Some(ws)
    })
}

