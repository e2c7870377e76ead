//! Quasi-trees: nodes split into a top and a bottom half.
//!
//! A quasi-node normally owns both halves, tied by the implicit link
//! "top dominates bottom". A node may also be *open* and own only one
//! half: an open top is a slot waiting for some other tree's bottom, an
//! open bottom is a segment root waiting for some other tree's top.
//! Children always hang from a half of their parent node and attach by
//! their own top half.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::features::FeatureSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Top,
    Bottom,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Top => "top",
            Side::Bottom => "bot",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One half of a quasi-node, addressed by node index within its tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfRef {
    pub node: usize,
    pub side: Side,
}

impl HalfRef {
    pub fn top(node: usize) -> Self {
        HalfRef { node, side: Side::Top }
    }

    pub fn bottom(node: usize) -> Self {
        HalfRef {
            node,
            side: Side::Bottom,
        }
    }
}

/// Which halves a quasi-node owns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeKind {
    Full,
    /// Only the top half: a slot filled by another tree's bottom.
    OpenTop,
    /// Only the bottom half: a segment root placed under another tree's top.
    OpenBottom,
}

impl NodeKind {
    pub fn has(self, side: Side) -> bool {
        !matches!(
            (self, side),
            (NodeKind::OpenTop, Side::Bottom) | (NodeKind::OpenBottom, Side::Top)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiNode {
    pub id: String,
    pub category: String,
    pub kind: NodeKind,
    pub top: FeatureSet,
    pub bottom: FeatureSet,
    /// Terminal tokens carried by the bottom half.
    pub anchor: Option<Vec<String>>,
}

impl QuasiNode {
    pub fn features(&self, side: Side) -> &FeatureSet {
        match side {
            Side::Top => &self.top,
            Side::Bottom => &self.bottom,
        }
    }
}

/// Immediate dominance: `child`'s top half is the `position`-th child of
/// `parent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub parent: HalfRef,
    pub child: usize,
    pub position: usize,
}

/// Reflexive dominance constraint between two halves of one tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dlink {
    pub upper: HalfRef,
    pub lower: HalfRef,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateNode(String),
    BadCategory(String),
    AnchorWithoutBottom(String),
    EmptyAnchor(String),
    AnchoredWithChildren(String),
    /// An idom edge names a half the tree does not have.
    DanglingEdge { parent: String, child: String },
    MultipleParents(String),
    BadPositions { parent: String },
    DanglingDlink { upper: String, lower: String },
    Cycle(Vec<String>),
    Unanchored,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateNode(n) => write!(f, "duplicate node `{}`", n),
            Violation::BadCategory(n) => write!(f, "node `{}` has an invalid category", n),
            Violation::AnchorWithoutBottom(n) => {
                write!(f, "node `{}` is anchored but has no bottom half", n)
            }
            Violation::EmptyAnchor(n) => write!(f, "node `{}` has an empty anchor", n),
            Violation::AnchoredWithChildren(n) => {
                write!(f, "anchored node `{}` has children", n)
            }
            Violation::DanglingEdge { parent, child } => {
                write!(f, "dangling edge {} -> {}", parent, child)
            }
            Violation::MultipleParents(n) => write!(f, "node `{}` has several parents", n),
            Violation::BadPositions { parent } => {
                write!(f, "child positions under {} are not dense from 0", parent)
            }
            Violation::DanglingDlink { upper, lower } => {
                write!(f, "dangling dlink {} -> {}", upper, lower)
            }
            Violation::Cycle(nodes) => write!(f, "cycle through {}", nodes.join(", ")),
            Violation::Unanchored => f.write_str("tree has no anchor"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiTree {
    pub name: String,
    pub nodes: Vec<QuasiNode>,
    pub edges: Vec<Edge>,
    pub dlinks: Vec<Dlink>,
    validated: bool,
}

fn valid_category(c: &str) -> bool {
    !c.is_empty() && !c.chars().any(char::is_whitespace)
}

impl QuasiTree {
    pub fn new(name: &str) -> Self {
        QuasiTree {
            name: name.to_string(),
            nodes: Vec::new(),
            edges: Vec::new(),
            dlinks: Vec::new(),
            validated: false,
        }
    }

    pub fn add_node(&mut self, id: &str, category: &str, kind: NodeKind) -> usize {
        self.validated = false;
        self.nodes.push(QuasiNode {
            id: id.to_string(),
            category: category.to_string(),
            kind,
            top: FeatureSet::new(),
            bottom: FeatureSet::new(),
            anchor: None,
        });
        self.nodes.len() - 1
    }

    pub fn full(&mut self, id: &str, category: &str) -> usize {
        self.add_node(id, category, NodeKind::Full)
    }

    pub fn open_top(&mut self, id: &str, category: &str) -> usize {
        self.add_node(id, category, NodeKind::OpenTop)
    }

    pub fn open_bottom(&mut self, id: &str, category: &str) -> usize {
        self.add_node(id, category, NodeKind::OpenBottom)
    }

    /// Sets the anchor from a space-separated token string.
    pub fn anchor(&mut self, node: usize, tokens: &str) -> &mut Self {
        self.validated = false;
        self.nodes[node].anchor = Some(tokens.split_whitespace().map(String::from).collect());
        self
    }

    pub fn set_features(&mut self, half: HalfRef, features: FeatureSet) -> &mut Self {
        self.validated = false;
        let node = &mut self.nodes[half.node];
        match half.side {
            Side::Top => node.top = features,
            Side::Bottom => node.bottom = features,
        }
        self
    }

    pub fn add_edge(&mut self, parent: HalfRef, child: usize, position: usize) -> &mut Self {
        self.validated = false;
        self.edges.push(Edge {
            parent,
            child,
            position,
        });
        self
    }

    /// Appends `child` as the next child of `parent`'s bottom half.
    pub fn child(&mut self, parent: usize, child: usize) -> &mut Self {
        let parent = HalfRef::bottom(parent);
        let position = self.edges.iter().filter(|e| e.parent == parent).count();
        self.add_edge(parent, child, position)
    }

    pub fn add_dlink(&mut self, upper: HalfRef, lower: HalfRef) -> &mut Self {
        self.validated = false;
        let link = Dlink { upper, lower };
        if !self.dlinks.contains(&link) {
            self.dlinks.push(link);
        }
        self
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.id == id)
    }

    pub fn has_half(&self, half: HalfRef) -> bool {
        self.nodes
            .get(half.node)
            .map_or(false, |n| n.kind.has(half.side))
    }

    pub fn half_name(&self, half: HalfRef) -> String {
        match self.nodes.get(half.node) {
            Some(n) => format!("{}.{}", n.id, half.side),
            None => format!("#{}.{}", half.node, half.side),
        }
    }

    /// Halves in canonical order: node order, top before bottom.
    pub fn halves(&self) -> impl Iterator<Item = HalfRef> + '_ {
        self.nodes.iter().enumerate().flat_map(|(i, n)| {
            [Side::Top, Side::Bottom]
                .into_iter()
                .filter(move |s| n.kind.has(*s))
                .map(move |side| HalfRef { node: i, side })
        })
    }

    /// Child node indices of one half, ordered by position.
    pub fn children_of(&self, half: HalfRef) -> Vec<usize> {
        let mut kids: Vec<&Edge> = self.edges.iter().filter(|e| e.parent == half).collect();
        kids.sort_by_key(|e| e.position);
        kids.into_iter().map(|e| e.child).collect()
    }

    pub fn anchors(&self) -> impl Iterator<Item = &[String]> + '_ {
        self.nodes.iter().filter_map(|n| n.anchor.as_deref())
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    /// Checks every structural invariant and materializes the intra-node
    /// link `top(n) dominates bottom(n)` for each full node. Re-validating
    /// is a no-op.
    pub fn validate(&mut self) -> Result<(), Vec<Violation>> {
        let violations = self.violations();
        if violations.is_empty() {
            for (i, n) in self.nodes.iter().enumerate() {
                if n.kind == NodeKind::Full {
                    let link = Dlink {
                        upper: HalfRef::top(i),
                        lower: HalfRef::bottom(i),
                    };
                    if !self.dlinks.contains(&link) {
                        self.dlinks.push(link);
                    }
                }
            }
            self.validated = true;
            Ok(())
        } else {
            self.validated = false;
            Err(violations)
        }
    }

    fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for n in &self.nodes {
            if !seen.insert(n.id.as_str()) {
                out.push(Violation::DuplicateNode(n.id.clone()));
            }
            if !valid_category(&n.category) {
                out.push(Violation::BadCategory(n.id.clone()));
            }
            if let Some(a) = &n.anchor {
                if !n.kind.has(Side::Bottom) {
                    out.push(Violation::AnchorWithoutBottom(n.id.clone()));
                }
                if a.is_empty() || a.iter().any(|t| t.is_empty()) {
                    out.push(Violation::EmptyAnchor(n.id.clone()));
                }
            }
        }

        let mut parents: BTreeMap<usize, usize> = BTreeMap::new();
        let mut positions: BTreeMap<HalfRef, Vec<usize>> = BTreeMap::new();
        for e in &self.edges {
            let child_ok = self.has_half(HalfRef::top(e.child));
            if !self.has_half(e.parent) || !child_ok {
                out.push(Violation::DanglingEdge {
                    parent: self.half_name(e.parent),
                    child: self.half_name(HalfRef::top(e.child)),
                });
                continue;
            }
            *parents.entry(e.child).or_default() += 1;
            positions.entry(e.parent).or_default().push(e.position);
        }
        for (child, count) in &parents {
            if *count > 1 {
                out.push(Violation::MultipleParents(self.nodes[*child].id.clone()));
            }
        }
        for (parent, mut ps) in positions {
            ps.sort_unstable();
            if ps.iter().enumerate().any(|(i, p)| i != *p) {
                out.push(Violation::BadPositions {
                    parent: self.half_name(parent),
                });
            }
            if self.nodes[parent.node].anchor.is_some() {
                out.push(Violation::AnchoredWithChildren(
                    self.nodes[parent.node].id.clone(),
                ));
            }
        }

        let mut graph_ok = true;
        for d in &self.dlinks {
            if !self.has_half(d.upper) || !self.has_half(d.lower) {
                graph_ok = false;
                out.push(Violation::DanglingDlink {
                    upper: self.half_name(d.upper),
                    lower: self.half_name(d.lower),
                });
            }
        }
        if graph_ok && !out.iter().any(|v| matches!(v, Violation::DanglingEdge { .. })) {
            if let Some(cycle) = self.find_cycle() {
                out.push(Violation::Cycle(
                    cycle.iter().map(|&i| self.nodes[i].id.clone()).collect(),
                ));
            }
        }

        if self.anchors().next().is_none() {
            out.push(Violation::Unanchored);
        }
        out
    }

    /// Nodes left over by Kahn's algorithm on the node graph formed by idom
    /// edges and dlinks between distinct nodes.
    fn find_cycle(&self) -> Option<Vec<usize>> {
        let n = self.nodes.len();
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        let arcs = self
            .edges
            .iter()
            .map(|e| (e.parent.node, e.child))
            .chain(
                self.dlinks
                    .iter()
                    .filter(|d| d.upper.node != d.lower.node || d.upper.side == Side::Bottom && d.lower.side == Side::Top)
                    .map(|d| (d.upper.node, d.lower.node)),
            );
        for (a, b) in arcs {
            succ[a].push(b);
            indeg[b] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut done = vec![false; n];
        while let Some(i) = stack.pop() {
            done[i] = true;
            for &j in &succ[i] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    stack.push(j);
                }
            }
        }
        let rest: Vec<usize> = (0..n).filter(|&i| !done[i]).collect();
        if rest.is_empty() {
            None
        } else {
            Some(rest)
        }
    }
}

/// Feature set from literal pairs; panics on malformed text, so only use it
/// with static input.
pub fn feats(pairs: &[(&str, &str)]) -> FeatureSet {
    FeatureSet::from_pairs(pairs.iter().copied()).expect("well-formed literal features")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_tree_materializes_intra_link() {
        let mut t = QuasiTree::new("alpha");
        let n = t.full("n", "S");
        t.anchor(n, "b");
        assert!(t.validate().is_ok());
        assert_eq!(
            t.dlinks,
            vec![Dlink {
                upper: HalfRef::top(0),
                lower: HalfRef::bottom(0)
            }]
        );
        assert!(t.validate().is_ok());
        assert_eq!(t.dlinks.len(), 1);
    }

    #[test]
    fn dangling_dlink_reported() {
        let mut t = QuasiTree::new("t");
        let n = t.full("n", "S");
        t.anchor(n, "b");
        t.add_dlink(HalfRef::top(0), HalfRef::bottom(7));
        let errs = t.validate().unwrap_err();
        assert!(matches!(errs[0], Violation::DanglingDlink { .. }));
        assert!(errs[0].to_string().starts_with("dangling dlink"));
    }

    #[test]
    fn dlink_to_missing_side_is_dangling() {
        let mut t = QuasiTree::new("t");
        let n = t.open_bottom("n", "NP");
        t.anchor(n, "b");
        t.add_dlink(HalfRef::top(n), HalfRef::bottom(n));
        assert!(matches!(
            t.validate().unwrap_err()[0],
            Violation::DanglingDlink { .. }
        ));
    }

    #[test]
    fn idom_against_dlink_is_cycle() {
        let mut t = QuasiTree::new("t");
        let n1 = t.full("n1", "S");
        let n2 = t.full("n2", "S");
        t.anchor(n2, "b");
        t.child(n1, n2);
        t.add_dlink(HalfRef::bottom(n2), HalfRef::top(n1));
        let errs = t.validate().unwrap_err();
        assert_eq!(
            errs,
            vec![Violation::Cycle(vec!["n1".into(), "n2".into()])]
        );
    }

    #[test]
    fn unanchored_rejected() {
        let mut t = QuasiTree::new("t");
        t.full("n", "S");
        assert_eq!(t.validate().unwrap_err(), vec![Violation::Unanchored]);
    }

    #[test]
    fn anchored_parent_rejected() {
        let mut t = QuasiTree::new("t");
        let a = t.full("a", "S");
        let b = t.full("b", "S");
        t.anchor(a, "x").anchor(b, "y");
        t.child(a, b);
        assert!(t
            .validate()
            .unwrap_err()
            .contains(&Violation::AnchoredWithChildren("a".into())));
    }

    #[test]
    fn positions_must_be_dense() {
        let mut t = QuasiTree::new("t");
        let a = t.full("a", "S");
        let b = t.full("b", "S");
        t.anchor(b, "y");
        t.add_edge(HalfRef::bottom(a), b, 1);
        assert!(matches!(
            t.validate().unwrap_err()[0],
            Violation::BadPositions { .. }
        ));
    }

    #[test]
    fn second_parent_rejected() {
        let mut t = QuasiTree::new("t");
        let a = t.full("a", "S");
        let b = t.full("b", "S");
        let c = t.full("c", "S");
        t.anchor(c, "y");
        t.child(a, c);
        t.child(b, c);
        assert!(t
            .validate()
            .unwrap_err()
            .contains(&Violation::MultipleParents("c".into())));
    }

    #[test]
    fn edge_into_open_bottom_is_dangling() {
        let mut t = QuasiTree::new("t");
        let a = t.full("a", "S");
        let b = t.open_bottom("b", "S");
        t.anchor(b, "y");
        t.child(a, b);
        assert!(matches!(
            t.validate().unwrap_err()[0],
            Violation::DanglingEdge { .. }
        ));
    }

    #[test]
    fn top_children_allowed() {
        let mut t = QuasiTree::new("t");
        let a = t.full("a", "S");
        let b = t.full("b", "NP");
        t.anchor(b, "y");
        t.add_edge(HalfRef::top(a), b, 0);
        assert!(t.validate().is_ok());
    }
}
