//! Slow reference implementations used to cross-check the solver.
//!
//! Nothing here calls into the pairing, tree building or unification code:
//! pairings are plain permutations, feature compatibility is a map merge,
//! and trees are assembled and checked from the raw workspace halves.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::derived::DerivedTree;
use crate::workspace::{HalfId, Workspace};

/// One preorder entry: category, features, anchor, arity.
pub type ShapeEntry = (String, Vec<(String, String)>, Option<Vec<String>>, usize);
pub type Shape = Vec<ShapeEntry>;

pub fn shape_of(tree: &DerivedTree) -> Shape {
    tree.nodes()
        .iter()
        .map(|n| {
            let f = n.features.iter().map(|(a, v)| (a.into(), v.into())).collect();
            (n.category.clone(), f, n.anchor.clone(), n.children.len())
        })
        .collect()
}

fn merge(ws: &Workspace, t: HalfId, b: HalfId) -> Option<Vec<(String, String)>> {
    let mut m: BTreeMap<String, String> = BTreeMap::new();
    for h in [t, b] {
        for (a, v) in ws.half(h).features.iter() {
            match m.get(a) {
                Some(old) if old != v => return None,
                _ => {
                    m.insert(a.into(), v.into());
                }
            }
        }
    }
    Some(m.into_iter().collect())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn interleavings(a: &[usize], b: &[usize]) -> Vec<Vec<usize>> {
    let n = a.len() + b.len();
    let mut out = Vec::new();
    // Each mask with exactly |a| bits picks the positions of `a`.
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != a.len() {
            continue;
        }
        let (mut i, mut j) = (0, 0);
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            if mask & (1 << k) != 0 {
                v.push(a[i]);
                i += 1;
            } else {
                v.push(b[j]);
                j += 1;
            }
        }
        out.push(v);
    }
    out
}

/// Every derived-tree shape of the workspace, found by trying all
/// bijections from tops to bottoms without pruning.
pub fn brute_force_shapes(ws: &Workspace) -> BTreeSet<Shape> {
    let tops: Vec<HalfId> = ws.ids().filter(|&h| ws.half(h).side == crate::Side::Top).collect();
    let bottoms: Vec<HalfId> = ws.ids().filter(|&h| ws.half(h).side == crate::Side::Bottom).collect();
    let mut out = BTreeSet::new();
    if tops.len() != bottoms.len() {
        return out;
    }
    let n = tops.len();
    'perm: for perm in permutations(n) {
        let pairs: Vec<(HalfId, HalfId)> = (0..n).map(|i| (tops[i], bottoms[perm[i]])).collect();
        let mut feats = Vec::new();
        for &(t, b) in &pairs {
            if ws.category(t) != ws.category(b) {
                continue 'perm;
            }
            match merge(ws, t, b) {
                Some(f) => feats.push(f),
                None => continue 'perm,
            }
        }
        let mut owner: BTreeMap<HalfId, usize> = BTreeMap::new();
        for (i, &(t, b)) in pairs.iter().enumerate() {
            owner.insert(t, i);
            owner.insert(b, i);
        }
        let parent: Vec<Option<usize>> = pairs
            .iter()
            .map(|&(t, _)| ws.half(t).parent.map(|p| owner[&p]))
            .collect();
        if parent.iter().filter(|p| p.is_none()).count() != 1 {
            continue;
        }
        // Every node must reach the root without revisiting itself.
        for i in 0..n {
            let (mut cur, mut steps) = (i, 0);
            while let Some(p) = parent[cur] {
                cur = p;
                steps += 1;
                if steps > n {
                    continue 'perm;
                }
            }
        }
        let above = |u: usize, mut l: usize| loop {
            if u == l {
                return true;
            }
            match parent[l] {
                Some(p) => l = p,
                None => return false,
            }
        };
        if !ws.dlinks().iter().all(|&(u, l)| above(owner[&u], owner[&l])) {
            continue;
        }
        let kids = |h: HalfId| -> Vec<usize> { ws.half(h).children.iter().map(|c| owner[c]).collect() };
        let orders: Vec<Vec<Vec<usize>>> = pairs
            .iter()
            .map(|&(t, b)| interleavings(&kids(t), &kids(b)))
            .collect();
        let root = parent.iter().position(Option::is_none).unwrap();
        let mut choice = vec![0usize; n];
        loop {
            let mut shape = Shape::new();
            let mut stack = vec![root];
            while let Some(i) = stack.pop() {
                let ch = &orders[i][choice[i]];
                let (t, b) = pairs[i];
                let anchor = ws.half(b).anchor.clone().or_else(|| ws.half(t).anchor.clone());
                shape.push((ws.category(t).into(), feats[i].clone(), anchor, ch.len()));
                stack.extend(ch.iter().rev().copied());
            }
            out.insert(shape);
            let mut k = 0;
            while k < n {
                choice[k] += 1;
                if choice[k] < orders[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
    }
    out
}

/// Checks a derived tree against the workspace it came from: every half is
/// realized once, matched halves agree, parent links and child orders
/// follow the halves, and every dominance link holds.
pub fn verify_tree(tree: &DerivedTree, ws: &Workspace) -> Result<(), String> {
    let nodes = tree.nodes();
    let mut at: BTreeMap<HalfId, usize> = BTreeMap::new();
    for (i, n) in nodes.iter().enumerate() {
        if ws.half(n.top).side != crate::Side::Top || ws.half(n.bottom).side != crate::Side::Bottom {
            return Err(format!("node {i} does not join a top with a bottom"));
        }
        for h in [n.top, n.bottom] {
            if at.insert(h, i).is_some() {
                return Err(format!("{h} realized twice"));
            }
        }
        if ws.category(n.top) != ws.category(n.bottom) || n.category != ws.category(n.top) {
            return Err(format!("node {i} joins different categories"));
        }
        let want = merge(ws, n.top, n.bottom).ok_or_else(|| format!("node {i} has clashing features"))?;
        let got: Vec<(String, String)> = n.features.iter().map(|(a, v)| (a.into(), v.into())).collect();
        if want != got {
            return Err(format!("node {i} features differ from the merge of its halves"));
        }
    }
    if at.len() != ws.halves().len() {
        return Err("some halves are not realized".into());
    }
    if nodes.first().map_or(true, |r| r.parent.is_some()) {
        return Err("node 0 is not a root".into());
    }
    if nodes.iter().filter(|n| n.parent.is_none()).count() != 1 {
        return Err("more than one root".into());
    }
    for (i, n) in nodes.iter().enumerate() {
        let expected = ws.half(n.top).parent.map(|p| at[&p]);
        if n.parent != expected {
            return Err(format!("node {i} hangs from the wrong parent"));
        }
        if n.children.iter().any(|&c| nodes.get(c).map_or(true, |k| k.parent != Some(i))) {
            return Err(format!("node {i} lists a child that does not point back"));
        }
        let from = |h: HalfId| -> Vec<usize> { ws.half(h).children.iter().map(|c| at[c]).collect() };
        if !interleavings(&from(n.top), &from(n.bottom)).contains(&n.children) {
            return Err(format!("node {i} children are not an interleaving of its halves' children"));
        }
    }
    for &(u, l) in ws.dlinks() {
        let (u, lower) = (at[&u], at[&l]);
        let (mut l, mut steps) = (lower, 0);
        while l != u {
            match nodes[l].parent {
                Some(p) if steps <= nodes.len() => {
                    l = p;
                    steps += 1;
                }
                _ => return Err(format!("dominance link {} over {} fails", nodes[u].top, nodes[lower].bottom)),
            }
        }
    }
    Ok(())
}
