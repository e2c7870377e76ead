use std::collections::BTreeSet;

use qtsg_core::oracle::verify_tree;
use qtsg_core::tag::{
    anbcn_fixture, auxiliary_names, encode_tag, tag_derive, tag_derived_trees, Constraint, PlainTree,
    TagGrammar, TagTree,
};
use qtsg_core::{recognize, Grammar, Side};

fn all_strings(alphabet: &[&str], max_len: usize) -> Vec<Vec<String>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::<String>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &frontier {
            for a in alphabet {
                let mut t = s.clone();
                t.push(a.to_string());
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn accepted_strings(g: &Grammar, alphabet: &[&str], max_len: usize) -> BTreeSet<String> {
    all_strings(alphabet, max_len)
        .into_iter()
        .filter(|s| recognize(g, s).unwrap().accepted)
        .map(|s| s.join(" "))
        .collect()
}

/// Checks that every adjunction in an accepting derivation is realized by
/// two cross-instance matches, one at the auxiliary root's bottom and one
/// at its foot's top, that every substitution is realized by one, and that
/// no other cross-instance match occurs.
fn check_match_counts(tag: &TagGrammar, g: &Grammar, s: &[String]) {
    let aux = auxiliary_names(tag);
    for d in recognize(g, s).unwrap().derivations {
        verify_tree(&d.tree, &d.workspace).unwrap();
        let cross = d.cross_matches();
        let mut used = vec![false; cross.len()];
        for (i, name) in d.trees_used().into_iter().enumerate() {
            let tree = g.tree(name).unwrap();
            let root = tree.nodes[0].id.as_str();
            let mut endpoints = vec![(root, Side::Bottom)];
            if aux.contains(name) {
                let foot = tree.nodes.iter().find(|n| n.top.get("foot") == Some("+")).unwrap();
                endpoints.push((foot.id.as_str(), Side::Top));
            } else if !name.ends_with("@arg") {
                continue;
            }
            for (node, side) in endpoints {
                let hits: Vec<usize> = (0..cross.len())
                    .filter(|&k| {
                        let o = if side == Side::Top { &cross[k].0 } else { &cross[k].1 };
                        o.instance == i && o.node == node && o.side == side
                    })
                    .collect();
                assert_eq!(hits.len(), 1, "{} {name}#{i}.{node}: {cross:?}", s.join(" "));
                used[hits[0]] = true;
            }
        }
        assert!(used.iter().all(|&u| u), "{}: stray cross match in {cross:?}", s.join(" "));
    }
}

#[test]
fn anbcn_strings_agree_up_to_nine() {
    let tag = anbcn_fixture();
    let g = encode_tag(&tag).unwrap();
    let strings = all_strings(&["a", "b", "c"], 9);
    assert_eq!(strings.len(), 29_524);
    let oracle = tag_derive(&tag, 9);
    let mut accepted = BTreeSet::new();
    for s in &strings {
        if recognize(&g, s).unwrap().accepted {
            accepted.insert(s.join(" "));
            check_match_counts(&tag, &g, s);
        }
    }
    assert_eq!(accepted, oracle);
}

#[test]
fn anbcn_trees_agree() {
    let tag = anbcn_fixture();
    let g = encode_tag(&tag).unwrap();
    for t in tag_derived_trees(&tag, 9) {
        let mut y = Vec::new();
        t.yield_tokens(&mut y);
        let ours: BTreeSet<PlainTree> = recognize(&g, &y)
            .unwrap()
            .derivations
            .iter()
            .map(|d| PlainTree::from_derived(&d.tree))
            .collect();
        let theirs: BTreeSet<PlainTree> = tag_derived_trees(&tag, 9)
            .into_iter()
            .filter(|u| {
                let mut z = Vec::new();
                u.yield_tokens(&mut z);
                z == y
            })
            .map(|u| u.plain())
            .collect();
        assert_eq!(ours, theirs, "{}", y.join(" "));
    }
}

/// A grammar with substitution, two auxiliary trees and adjunction
/// constraints.
fn sleepy() -> TagGrammar {
    let mut g = TagGrammar::new("sleepy", "S");
    let mut s = TagTree::new("sleeps");
    let root = s.add("s", "S");
    let np = s.substitution("np", "NP");
    let vp = s.add("vp", "VP");
    let v = s.anchored("v", "V", "sleeps");
    s.child(root, np).child(root, vp).child(vp, v);
    s.constrain(root, Constraint::Forbidden);
    g.initial.push(s);
    for name in ["john", "mary"] {
        let mut t = TagTree::new(name);
        let n = t.anchored("n", "NP", name);
        let _ = n;
        g.initial.push(t);
    }
    let mut often = TagTree::new("often");
    let r = often.add("r", "VP");
    let adv = often.anchored("adv", "ADV", "often");
    let f = often.foot("f", "VP");
    often.child(r, adv).child(r, f);
    g.auxiliary.push(often);
    let mut very = TagTree::new("very");
    let r = very.add("r", "ADV");
    let d = very.anchored("d", "DEG", "very");
    let f = very.foot("f", "ADV");
    very.child(r, d).child(r, f);
    very.constrain(r, Constraint::Forbidden);
    g.auxiliary.push(very);
    g
}

#[test]
fn substitution_and_constraints_agree() {
    let tag = sleepy();
    let g = encode_tag(&tag).unwrap();
    let alphabet = ["john", "mary", "sleeps", "often", "very"];
    let oracle = tag_derive(&tag, 5);
    assert!(oracle.contains("john often very often sleeps"));
    assert!(!oracle.contains("john very very often sleeps"));
    assert_eq!(accepted_strings(&g, &alphabet, 5), oracle);
    for s in &oracle {
        let toks: Vec<String> = s.split(' ').map(String::from).collect();
        check_match_counts(&tag, &g, &toks);
    }
}

#[test]
fn obligatory_adjunction_agrees() {
    let mut tag = sleepy();
    let vp = tag.initial[0].node_index("vp").unwrap();
    tag.initial[0].constrain(vp, Constraint::Obligatory);
    let g = encode_tag(&tag).unwrap();
    let oracle = tag_derive(&tag, 4);
    assert!(!oracle.contains("john sleeps"));
    assert!(oracle.contains("john often sleeps"));
    assert_eq!(accepted_strings(&g, &["john", "mary", "sleeps", "often", "very"], 4), oracle);
}
