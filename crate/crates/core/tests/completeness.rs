//! The recognizer against a brute-force one: every multiset of trees whose
//! anchor words match the input, solved by trying all bijections.

use std::collections::{BTreeMap, BTreeSet};

use qtsg_core::grammars::build_tagcount_grammar;
use qtsg_core::oracle::brute_force_shapes;
use qtsg_core::{recognize, Grammar, QuasiTree, Workspace};

fn word_bag<'a>(words: impl Iterator<Item = &'a str>) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for w in words {
        *m.entry(w.to_lowercase()).or_insert(0) += 1;
    }
    m
}

fn tree_words(t: &QuasiTree) -> Vec<String> {
    t.anchors().flatten().map(|w| w.to_lowercase()).collect()
}

type Yields = BTreeSet<Vec<String>>;

/// Brute-force recognizer; solved multisets are cached in `memo` because
/// many inputs share one.
fn brute_accepts(g: &Grammar, words: &[&str], memo: &mut BTreeMap<Vec<usize>, Yields>) -> bool {
    let target = word_bag(words.iter().copied());
    let want: Vec<String> = words.iter().map(|w| w.to_lowercase()).collect();
    let trees = g.trees();
    let sizes: Vec<usize> = trees.iter().map(|t| tree_words(t).len()).collect();
    // Every count vector whose anchor words add up to the input length.
    let mut vectors = vec![Vec::new()];
    for &size in &sizes {
        let mut next = Vec::new();
        for v in vectors {
            let used: usize = v.iter().zip(&sizes).map(|(c, s)| c * s).sum();
            let mut c = 0;
            while used + c * size <= words.len() {
                next.push([v.clone(), vec![c]].concat());
                c += 1;
            }
        }
        vectors = next;
    }
    vectors.into_iter().any(|counts| {
        let used: usize = counts.iter().zip(&sizes).map(|(c, s)| c * s).sum();
        if used != words.len() {
            return false;
        }
        let mut bag = BTreeMap::new();
        for (i, &c) in counts.iter().enumerate() {
            for _ in 0..c {
                for w in tree_words(&trees[i]) {
                    *bag.entry(w).or_insert(0) += 1;
                }
            }
        }
        if bag != target {
            return false;
        }
        let yields = memo.entry(counts.clone()).or_insert_with(|| {
            let mut ws = Workspace::new();
            for (i, &c) in counts.iter().enumerate() {
                for _ in 0..c {
                    ws.instantiate(&trees[i]);
                }
            }
            brute_force_shapes(&ws)
                .iter()
                .map(|shape| {
                    shape
                        .iter()
                        .filter_map(|e| e.2.as_ref())
                        .flatten()
                        .map(|w| w.to_lowercase())
                        .collect()
                })
                .collect()
        });
        yields.contains(&want)
    })
}

fn strings(alphabet: &[&'static str], max_len: usize) -> Vec<Vec<&'static str>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max_len {
        let next: Vec<Vec<&str>> = frontier
            .iter()
            .flat_map(|s: &Vec<&str>| alphabet.iter().map(move |a| [s.clone(), vec![*a]].concat()))
            .collect();
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[test]
fn tagcount_matches_brute_force() {
    let g = build_tagcount_grammar();
    let mut memo = BTreeMap::new();
    for s in strings(&["a", "b", "c"], 5) {
        if s.is_empty() {
            continue;
        }
        assert_eq!(recognize(&g, &s).unwrap().accepted, brute_accepts(&g, &s, &mut memo), "{s:?}");
    }
}

/// Multi-word anchors and an open slot that two trees compete for.
fn toy() -> Grammar {
    let mut g = Grammar::new("toy");
    let mut s = QuasiTree::new("s");
    let root = s.full("s", "S");
    let x = s.open_top("x", "X");
    let v = s.full("v", "V");
    s.anchor(v, "v");
    s.child(root, x).child(root, v);
    g.add_tree(s).unwrap();
    let mut xy = QuasiTree::new("xy");
    let seg = xy.open_bottom("x", "X");
    let inner = xy.open_top("y", "X");
    let w = xy.full("w", "W");
    xy.anchor(w, "p q");
    xy.child(seg, w).child(seg, inner);
    g.add_tree(xy).unwrap();
    let mut leaf = QuasiTree::new("leaf");
    let l = leaf.open_bottom("x", "X");
    leaf.anchor(l, "r");
    g.add_tree(leaf).unwrap();
    g
}

#[test]
fn toy_grammar_matches_brute_force() {
    let g = toy();
    let mut memo = BTreeMap::new();
    for s in strings(&["p", "q", "r", "v"], 6) {
        if s.is_empty() {
            continue;
        }
        assert_eq!(recognize(&g, &s).unwrap().accepted, brute_accepts(&g, &s, &mut memo), "{s:?}");
    }
    assert!(recognize(&g, &["p", "q", "p", "q", "r", "v"]).unwrap().accepted);
    assert!(!recognize(&g, &["p", "r", "q", "v"]).unwrap().accepted);
}
