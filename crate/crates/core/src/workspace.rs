//! The arena in which instantiated quasi-trees are composed.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::features::FeatureSet;
use crate::quasi_tree::{HalfRef, NodeKind, QuasiTree, Side};

/// Workspace-global half identifier. Ordering is the canonical order used
/// for enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfId(pub u32);

impl HalfId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for HalfId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h{}", self.0)
    }
}

#[derive(Clone, Debug)]
pub struct WsNode {
    pub instance: usize,
    /// Node index inside the elementary tree.
    pub local: usize,
    pub category: String,
    pub kind: NodeKind,
    pub top: Option<HalfId>,
    pub bottom: Option<HalfId>,
}

#[derive(Clone, Debug)]
pub struct WsHalf {
    pub node: usize,
    pub side: Side,
    pub features: FeatureSet,
    pub anchor: Option<Vec<String>>,
    /// The half this (top) half hangs from.
    pub parent: Option<HalfId>,
    /// Child top halves in position order.
    pub children: Vec<HalfId>,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub tree: QuasiTree,
    pub first_node: usize,
}

/// Where a workspace half came from.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Origin<'a> {
    pub tree: &'a str,
    pub instance: usize,
    pub node: &'a str,
    pub side: Side,
}

impl fmt::Display for Origin<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}:{}.{}", self.tree, self.instance, self.node, self.side)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Workspace {
    instances: Vec<Instance>,
    nodes: Vec<WsNode>,
    halves: Vec<WsHalf>,
    dlinks: Vec<(HalfId, HalfId)>,
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a fresh copy of `tree` and returns its instance index.
    ///
    /// The tree must have been validated, so its intra-node links are
    /// present in its dlink set.
    pub fn instantiate(&mut self, tree: &QuasiTree) -> usize {
        debug_assert!(tree.is_validated(), "instantiate needs a validated tree");
        let instance = self.instances.len();
        let first_node = self.nodes.len();
        let mut ids = Vec::with_capacity(tree.nodes.len());
        for (local, n) in tree.nodes.iter().enumerate() {
            let node = self.nodes.len();
            let mut slot = |side: Side| {
                if !n.kind.has(side) {
                    return None;
                }
                let id = HalfId(self.halves.len() as u32);
                self.halves.push(WsHalf {
                    node,
                    side,
                    features: n.features(side).clone(),
                    anchor: if side == Side::Bottom {
                        n.anchor.clone()
                    } else {
                        None
                    },
                    parent: None,
                    children: Vec::new(),
                });
                Some(id)
            };
            let top = slot(Side::Top);
            let bottom = slot(Side::Bottom);
            ids.push((top, bottom));
            self.nodes.push(WsNode {
                instance,
                local,
                category: n.category.clone(),
                kind: n.kind,
                top,
                bottom,
            });
        }
        let resolve = |h: HalfRef| match h.side {
            Side::Top => ids[h.node].0,
            Side::Bottom => ids[h.node].1,
        };
        let mut edges = tree.edges.clone();
        edges.sort_by_key(|e| (e.parent, e.position));
        for e in &edges {
            let (Some(p), Some(c)) = (resolve(e.parent), ids[e.child].0) else {
                continue;
            };
            self.halves[p.index()].children.push(c);
            self.halves[c.index()].parent = Some(p);
        }
        for d in &tree.dlinks {
            if let (Some(u), Some(l)) = (resolve(d.upper), resolve(d.lower)) {
                self.dlinks.push((u, l));
            }
        }
        self.instances.push(Instance {
            tree: tree.clone(),
            first_node,
        });
        instance
    }

    /// Adds an extra dominance constraint between two existing halves.
    pub fn add_dlink(&mut self, upper: HalfId, lower: HalfId) {
        assert!(upper.index() < self.halves.len() && lower.index() < self.halves.len());
        self.dlinks.push((upper, lower));
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    pub fn instances(&self) -> &[Instance] {
        &self.instances
    }

    pub fn nodes(&self) -> &[WsNode] {
        &self.nodes
    }

    pub fn halves(&self) -> &[WsHalf] {
        &self.halves
    }

    pub fn half(&self, id: HalfId) -> &WsHalf {
        &self.halves[id.index()]
    }

    pub fn dlinks(&self) -> &[(HalfId, HalfId)] {
        &self.dlinks
    }

    pub fn category(&self, id: HalfId) -> &str {
        &self.nodes[self.half(id).node].category
    }

    pub fn instance_of(&self, id: HalfId) -> usize {
        self.nodes[self.half(id).node].instance
    }

    pub fn tops(&self) -> impl Iterator<Item = HalfId> + '_ {
        self.ids().filter(|&h| self.half(h).side == Side::Top)
    }

    pub fn bottoms(&self) -> impl Iterator<Item = HalfId> + '_ {
        self.ids().filter(|&h| self.half(h).side == Side::Bottom)
    }

    pub fn ids(&self) -> impl Iterator<Item = HalfId> {
        (0..self.halves.len() as u32).map(HalfId)
    }

    /// The same-node partner half, if the node is full.
    pub fn sibling(&self, id: HalfId) -> Option<HalfId> {
        let node = &self.nodes[self.half(id).node];
        match self.half(id).side {
            Side::Top => node.bottom,
            Side::Bottom => node.top,
        }
    }

    pub fn origin(&self, id: HalfId) -> Origin<'_> {
        let h = self.half(id);
        let node = &self.nodes[h.node];
        let tree = &self.instances[node.instance].tree;
        Origin {
            tree: &tree.name,
            instance: node.instance,
            node: &tree.nodes[node.local].id,
            side: h.side,
        }
    }

    /// `(tree name, instance index)` of a half.
    pub fn provenance(&self, id: HalfId) -> (&str, usize) {
        let o = self.origin(id);
        (o.tree, o.instance)
    }

    /// Looks a half up by instance, node id and side.
    pub fn find(&self, instance: usize, node: &str, side: Side) -> Option<HalfId> {
        let inst = self.instances.get(instance)?;
        let local = inst.tree.node_index(node)?;
        let n = &self.nodes[inst.first_node + local];
        match side {
            Side::Top => n.top,
            Side::Bottom => n.bottom,
        }
    }
}
