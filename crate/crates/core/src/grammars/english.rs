//! ECM and object control.
//!
//! An ECM verb projects a matrix AgrOP whose top licenses accusative
//! (`acc=+`) and whose bottom does not, so it cannot collapse: the
//! infinitive's subject segment, an open AgrOP bottom, must be placed
//! between the two halves. The infinitival complement itself has no
//! subject-licensing head. An object-control verb instead takes its
//! object as a matrix NP slot and selects an IP whose subject is PRO
//! (`subj=pro`).

use crate::grammar::Grammar;
use crate::quasi_tree::{feats, HalfRef, QuasiTree};

fn ecm_verb(name: &str, verb: &str) -> QuasiTree {
    let mut t = QuasiTree::new(name);
    let agrs = t.full("agrs", "AgrSP");
    let subj = t.open_top("subj", "NP");
    let vp = t.full("vp", "VP");
    let v = t.full("v", "V");
    let agro = t.full("agro", "AgrOP");
    let comp = t.open_top("comp", "AgrOP");
    t.set_features(HalfRef::top(subj), feats(&[("case", "nom"), ("expl", "-")]));
    t.set_features(HalfRef::top(agro), feats(&[("acc", "+")]));
    t.set_features(HalfRef::bottom(agro), feats(&[("acc", "-")]));
    t.set_features(HalfRef::top(comp), feats(&[("acc", "-")]));
    t.anchor(v, verb);
    t.child(agrs, subj).child(agrs, vp).child(vp, v).child(vp, agro).child(agro, comp);
    t
}

fn control_verb(name: &str, verb: &str) -> QuasiTree {
    let mut t = QuasiTree::new(name);
    let agrs = t.full("agrs", "AgrSP");
    let subj = t.open_top("subj", "NP");
    let vp = t.full("vp", "VP");
    let v = t.full("v", "V");
    let obj = t.open_top("obj", "NP");
    let comp = t.open_top("comp", "IP");
    t.set_features(HalfRef::top(subj), feats(&[("case", "nom"), ("expl", "-")]));
    t.set_features(HalfRef::top(obj), feats(&[("case", "acc"), ("expl", "-")]));
    t.set_features(HalfRef::top(comp), feats(&[("subj", "pro")]));
    t.anchor(v, verb);
    t.child(agrs, subj).child(agrs, vp).child(vp, v).child(vp, obj).child(vp, comp);
    t
}

/// Infinitive without a subject-licensing head: the subject is a segment
/// that has to find Case in the matrix clause.
fn ecm_infinitive(name: &str, verb: &str, thematic_subject: bool) -> QuasiTree {
    let mut t = QuasiTree::new(name);
    let seg = t.open_bottom("subjseg", "AgrOP");
    let subj = t.open_top("subj", "NP");
    let ip = t.full("ip", "AgrOP");
    let v = t.full("v", "V");
    let obj = t.open_top("obj", "NP");
    t.set_features(HalfRef::bottom(seg), feats(&[("acc", "+")]));
    let subj_feats = if thematic_subject {
        feats(&[("case", "acc"), ("expl", "-")])
    } else {
        feats(&[("case", "acc")])
    };
    t.set_features(HalfRef::top(subj), subj_feats);
    t.set_features(HalfRef::top(ip), feats(&[("acc", "-")]));
    t.set_features(HalfRef::bottom(ip), feats(&[("acc", "-")]));
    t.set_features(HalfRef::top(obj), feats(&[("case", "acc")]));
    t.anchor(v, verb);
    t.child(seg, subj).child(seg, ip).child(ip, v).child(ip, obj);
    t
}

fn control_infinitive(name: &str, verb: &str) -> QuasiTree {
    let mut t = QuasiTree::new(name);
    let ip = t.open_bottom("ip", "IP");
    let v = t.full("v", "V");
    let obj = t.open_top("obj", "NP");
    t.set_features(HalfRef::bottom(ip), feats(&[("subj", "pro")]));
    t.set_features(HalfRef::top(obj), feats(&[("case", "acc")]));
    t.anchor(v, verb);
    t.child(ip, v).child(ip, obj);
    t
}

fn noun_phrase(name: &str, words: &str, features: &[(&str, &str)]) -> QuasiTree {
    let mut t = QuasiTree::new(name);
    let np = t.open_bottom("np", "NP");
    t.set_features(HalfRef::bottom(np), feats(features));
    t.anchor(np, words);
    t
}

pub fn build_english_grammar() -> Grammar {
    let mut g = Grammar::new("english");
    for t in [
        ecm_verb("believed", "believed"),
        ecm_verb("expect", "expect"),
        control_verb("persuaded", "persuaded"),
        ecm_infinitive("to_like_ecm", "to like", true),
        ecm_infinitive("to_be_ecm", "to be", false),
        control_infinitive("to_like_pro", "to like"),
        noun_phrase("we", "we", &[("case", "nom")]),
        noun_phrase("he", "he", &[("case", "nom")]),
        noun_phrase("him", "him", &[("case", "acc")]),
        noun_phrase("kidneys", "kidneys", &[]),
        noun_phrase("there", "there", &[("expl", "+")]),
        noun_phrase("a_riot", "a riot", &[]),
    ] {
        g.add_tree(t).expect("static English grammar is valid");
    }
    g
}
