//! Derived trees: the result of contracting every matched pair of halves
//! into one node.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::features::FeatureSet;
use crate::pairing::Pairing;
use crate::workspace::{HalfId, Workspace};

#[derive(Clone, Debug)]
pub struct DerivedNode {
    pub category: String,
    pub features: FeatureSet,
    pub top: HalfId,
    pub bottom: HalfId,
    pub anchor: Option<Vec<String>>,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

/// An ordered labeled tree whose nodes are stored in preorder; node 0 is
/// the root.
///
/// Equality and ordering look only at the shape: categories, features,
/// anchors and child structure. Which halves a node realizes is ignored.
#[derive(Clone, Debug)]
pub struct DerivedTree {
    nodes: Vec<DerivedNode>,
}

/// One preorder entry of a tree's shape.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShapeNode {
    pub category: String,
    pub features: FeatureSet,
    pub anchor: Option<Vec<String>>,
    pub arity: usize,
}

impl DerivedTree {
    pub fn nodes(&self) -> &[DerivedNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn shape(&self) -> Vec<ShapeNode> {
        self.nodes
            .iter()
            .map(|n| ShapeNode {
                category: n.category.clone(),
                features: n.features.clone(),
                anchor: n.anchor.clone(),
                arity: n.children.len(),
            })
            .collect()
    }

    /// Index of the node realizing `half`.
    pub fn node_of(&self, half: HalfId) -> Option<usize> {
        self.nodes
            .iter()
            .position(|n| n.top == half || n.bottom == half)
    }

    pub fn is_ancestor_or_self(&self, upper: usize, mut lower: usize) -> bool {
        loop {
            if lower == upper {
                return true;
            }
            match self.nodes[lower].parent {
                Some(p) => lower = p,
                None => return false,
            }
        }
    }

    pub fn depth(&self, mut node: usize) -> usize {
        let mut d = 0;
        while let Some(p) = self.nodes[node].parent {
            node = p;
            d += 1;
        }
        d
    }

    /// The `(top, bottom)` pairs realized by this tree, sorted.
    pub fn realized_pairs(&self) -> Vec<(HalfId, HalfId)> {
        let mut v: Vec<_> = self.nodes.iter().map(|n| (n.top, n.bottom)).collect();
        v.sort();
        v
    }

    pub fn pairing(&self) -> Pairing {
        Pairing::new(self.realized_pairs())
    }
}

impl PartialEq for DerivedTree {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for DerivedTree {}

impl PartialOrd for DerivedTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DerivedTree {
    fn cmp(&self, other: &Self) -> Ordering {
        let a = self.nodes.iter().map(|n| (&n.category, &n.features, &n.anchor, n.children.len()));
        let b = other.nodes.iter().map(|n| (&n.category, &n.features, &n.anchor, n.children.len()));
        a.cmp(b)
    }
}

/// All order-preserving interleavings of two sequences.
pub fn shuffles<T: Clone>(a: &[T], b: &[T]) -> Vec<Vec<T>> {
    fn go<T: Clone>(a: &[T], b: &[T], prefix: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if a.is_empty() || b.is_empty() {
            let mut v = prefix.clone();
            v.extend_from_slice(a);
            v.extend_from_slice(b);
            out.push(v);
            return;
        }
        prefix.push(a[0].clone());
        go(&a[1..], b, prefix, out);
        prefix.pop();
        prefix.push(b[0].clone());
        go(a, &b[1..], prefix, out);
        prefix.pop();
    }
    let mut out = Vec::new();
    go(a, b, &mut Vec::new(), &mut out);
    out
}

/// Contracts each matched pair into one node and returns every tree the
/// contraction admits: one per combination of child interleavings at
/// nodes that receive children from both halves. Returns an empty set when
/// the contraction is not a tree.
pub fn build_trees(ws: &Workspace, pairing: &Pairing) -> Vec<DerivedTree> {
    let pairs = pairing.matches();
    let n = pairs.len();
    let mut owner = vec![usize::MAX; ws.halves().len()];
    for (i, &(t, b)) in pairs.iter().enumerate() {
        owner[t.index()] = i;
        owner[b.index()] = i;
    }
    if owner.iter().any(|&o| o == usize::MAX) {
        return Vec::new();
    }

    let parent: Vec<Option<usize>> = pairs
        .iter()
        .map(|&(t, _)| ws.half(t).parent.map(|h| owner[h.index()]))
        .collect();
    let roots: Vec<usize> = (0..n).filter(|&i| parent[i].is_none()).collect();
    if roots.len() != 1 {
        return Vec::new();
    }

    // Child sequences per node; the top half's children come first in the
    // list of candidate orders only by convention, all shuffles are kept.
    let options: Vec<Vec<Vec<usize>>> = pairs
        .iter()
        .map(|&(t, b)| {
            let from = |h: HalfId| -> Vec<usize> {
                ws.half(h).children.iter().map(|c| owner[c.index()]).collect()
            };
            let (up, down) = (from(t), from(b));
            if up.is_empty() || down.is_empty() {
                let mut v = up;
                v.extend(down);
                vec![v]
            } else {
                shuffles(&down, &up)
            }
        })
        .collect();

    // Tree check: everything reachable from the root exactly once.
    let mut seen = vec![false; n];
    let mut stack = vec![roots[0]];
    let mut count = 0;
    while let Some(i) = stack.pop() {
        if seen[i] {
            return Vec::new();
        }
        seen[i] = true;
        count += 1;
        stack.extend(options[i][0].iter().copied());
    }
    if count != n {
        return Vec::new();
    }

    let features: Vec<FeatureSet> = pairs
        .iter()
        .map(|&(t, b)| {
            ws.half(t)
                .features
                .unify(&ws.half(b).features)
                .unwrap_or_default()
        })
        .collect();

    let branching: Vec<usize> = (0..n).filter(|&i| options[i].len() > 1).collect();
    let mut choice = vec![0usize; n];
    let mut out = Vec::new();
    loop {
        out.push(assemble(ws, pairs, &features, &options, &choice, roots[0]));
        // Odometer over the branching nodes.
        let mut k = 0;
        loop {
            if k == branching.len() {
                return out;
            }
            let i = branching[k];
            choice[i] += 1;
            if choice[i] < options[i].len() {
                break;
            }
            choice[i] = 0;
            k += 1;
        }
    }
}

fn assemble(
    ws: &Workspace,
    pairs: &[(HalfId, HalfId)],
    features: &[FeatureSet],
    options: &[Vec<Vec<usize>>],
    choice: &[usize],
    root: usize,
) -> DerivedTree {
    let mut nodes: Vec<DerivedNode> = Vec::with_capacity(pairs.len());
    // (pair index, parent slot in `nodes`)
    let mut stack = vec![(root, None::<usize>)];
    while let Some((i, parent)) = stack.pop() {
        let idx = nodes.len();
        let (t, b) = pairs[i];
        nodes.push(DerivedNode {
            category: ws.category(t).into(),
            features: features[i].clone(),
            top: t,
            bottom: b,
            anchor: ws.half(b).anchor.clone(),
            parent,
            children: Vec::new(),
        });
        if let Some(p) = parent {
            nodes[p].children.push(idx);
        }
        for &c in options[i][choice[i]].iter().rev() {
            stack.push((c, Some(idx)));
        }
    }
    DerivedTree { nodes }
}

/// True when every dominance link of the workspace, including the
/// intra-node links, holds in `tree`.
pub fn check_dominance(tree: &DerivedTree, ws: &Workspace) -> bool {
    let mut at = vec![usize::MAX; ws.halves().len()];
    for (i, n) in tree.nodes.iter().enumerate() {
        at[n.top.index()] = i;
        at[n.bottom.index()] = i;
    }
    ws.dlinks().iter().all(|&(u, l)| {
        let (u, l) = (at[u.index()], at[l.index()]);
        u != usize::MAX && l != usize::MAX && tree.is_ancestor_or_self(u, l)
    })
}

/// Terminal string: anchors in preorder; a node's own anchor precedes its
/// children.
pub fn yield_of(tree: &DerivedTree) -> Vec<String> {
    tree.nodes
        .iter()
        .filter_map(|n| n.anchor.as_ref())
        .flatten()
        .cloned()
        .collect()
}

/// Workspace nodes whose two halves are realized by different tree nodes.
pub fn stretched_nodes(tree: &DerivedTree, ws: &Workspace) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for (i, n) in ws.nodes().iter().enumerate() {
        if let (Some(t), Some(b)) = (n.top, n.bottom) {
            if tree.node_of(t) != tree.node_of(b) {
                out.insert(i);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasi_tree::{HalfRef, QuasiTree, Side};
    use crate::pairing::enumerate_pairings;

    fn leaf(name: &str, cat: &str) -> QuasiTree {
        let mut t = QuasiTree::new(name);
        let n = t.full("n", cat);
        t.anchor(n, name);
        t.validate().unwrap();
        t
    }

    #[test]
    fn shuffle_counts() {
        let s = shuffles(&['a', 'b'], &['c']);
        assert_eq!(s.len(), 3);
        let set: BTreeSet<_> = s.into_iter().collect();
        assert!(set.contains(&alloc::vec!['c', 'a', 'b']));
        assert!(set.contains(&alloc::vec!['a', 'c', 'b']));
        assert!(set.contains(&alloc::vec!['a', 'b', 'c']));
    }

    #[test]
    fn identity_collapse_reproduces_tree() {
        let mut t = QuasiTree::new("t");
        let s = t.full("s", "S");
        let a = t.full("a", "A");
        let b = t.full("b", "B");
        t.anchor(a, "a").anchor(b, "b");
        t.child(s, a).child(s, b);
        t.validate().unwrap();
        let mut ws = Workspace::new();
        ws.instantiate(&t);
        let p: Vec<_> = enumerate_pairings(&ws).collect();
        assert_eq!(p.len(), 1);
        let trees = build_trees(&ws, &p[0]);
        assert_eq!(trees.len(), 1);
        assert_eq!(yield_of(&trees[0]), ["a", "b"]);
        assert!(check_dominance(&trees[0], &ws));
        assert!(stretched_nodes(&trees[0], &ws).is_empty());
    }

    #[test]
    fn children_from_both_halves_are_shuffled() {
        let mut t = QuasiTree::new("t");
        let x = t.full("x", "X");
        let a = t.full("a", "A");
        let b = t.full("b", "B");
        let c = t.full("c", "C");
        t.anchor(a, "a").anchor(b, "b").anchor(c, "c");
        t.child(x, a).child(x, b);
        t.add_edge(HalfRef::top(x), c, 0);
        t.validate().unwrap();
        let mut ws = Workspace::new();
        ws.instantiate(&t);
        let p = enumerate_pairings(&ws).next().unwrap();
        let yields: BTreeSet<Vec<String>> =
            build_trees(&ws, &p).iter().map(yield_of).collect();
        let want: BTreeSet<Vec<String>> = [["c", "a", "b"], ["a", "c", "b"], ["a", "b", "c"]]
            .iter()
            .map(|y| y.iter().map(|s| String::from(*s)).collect())
            .collect();
        assert_eq!(yields, want);
    }

    #[test]
    fn crossed_singletons_are_not_a_tree() {
        let mut ws = Workspace::new();
        ws.instantiate(&leaf("a", "S"));
        ws.instantiate(&leaf("b", "S"));
        let crossed = enumerate_pairings(&ws).nth(1).unwrap();
        assert!(crossed.cross_instance(&ws) == 2);
        assert!(build_trees(&ws, &crossed).is_empty());
    }

    #[test]
    fn dominance_cases() {
        // root r with children x (open top) and y; y's bottom hosts z.
        let mut t = QuasiTree::new("t");
        let r = t.full("r", "S");
        let m = t.full("m", "S");
        let k = t.full("k", "K");
        let z = t.full("z", "Z");
        t.anchor(k, "k").anchor(z, "z");
        t.child(r, m).child(m, k).child(r, z);
        t.validate().unwrap();
        let mut ws = Workspace::new();
        ws.instantiate(&t);
        let p = enumerate_pairings(&ws)
            .find(|p| p.matches().iter().all(|(a, b)| ws.sibling(*a) == Some(*b)))
            .unwrap();
        let tree = &build_trees(&ws, &p)[0];
        assert!(check_dominance(tree, &ws));

        // r.top over k.bot: ancestor two levels down.
        let mut ws2 = ws.clone();
        let rt = ws.find(0, "r", Side::Top).unwrap();
        let kb = ws.find(0, "k", Side::Bottom).unwrap();
        ws2.add_dlink(rt, kb);
        assert!(check_dominance(tree, &ws2));

        // z.top over k.bot: sibling subtrees.
        let mut ws3 = ws.clone();
        let zt = ws.find(0, "z", Side::Top).unwrap();
        ws3.add_dlink(zt, kb);
        assert!(!check_dominance(tree, &ws3));
    }

    #[test]
    fn multi_token_anchor_is_contiguous() {
        let mut t = QuasiTree::new("t");
        let s = t.full("s", "S");
        let a = t.full("a", "V");
        let b = t.full("b", "V");
        t.anchor(a, "zu reparieren").anchor(b, "hat");
        t.child(s, a).child(s, b);
        t.validate().unwrap();
        let mut ws = Workspace::new();
        ws.instantiate(&t);
        let p = enumerate_pairings(&ws)
            .find(|p| p.matches().iter().all(|(a, b)| ws.sibling(*a) == Some(*b)))
            .unwrap();
        assert_eq!(yield_of(&build_trees(&ws, &p)[0]), ["zu", "reparieren", "hat"]);
    }
}
