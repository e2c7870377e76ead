//! Subordinate clauses with an infinitival complement.
//!
//! The Mittelfeld is a chain of VP halves. Each argument segment is an
//! open VP bottom whose first child is the argument's NP slot and whose
//! second child is the top of a full VP node; that node's bottom carries
//! the rest of the clause, so material of another tree can be placed
//! between the two halves.
//!
//! `def` marks complement type. A full complement (`def=no`) projects its
//! own AgrOP, which takes the object locally. A defective complement
//! (`def=yes`) has no AgrOP: its object segment is an open VP bottom that
//! has to be placed in the matrix Mittelfeld, possibly above the matrix
//! subject. *versprochen hat* selects either type, *verlangte* only the
//! full one.

use crate::grammar::Grammar;
use crate::quasi_tree::{feats, HalfRef, QuasiTree};

fn complementizer() -> QuasiTree {
    let mut t = QuasiTree::new("dass");
    let c = t.full("c", "C");
    let head = t.full("comp", "C");
    let mf = t.open_top("mf", "VP");
    t.anchor(head, "daß");
    t.child(c, head).child(c, mf);
    t
}

fn matrix(name: &str, verb: &str, def: &str) -> QuasiTree {
    let mut t = QuasiTree::new(name);
    let seg = t.open_bottom("subj", "VP");
    let np = t.open_top("np", "NP");
    let vp = t.full("vp", "VP");
    let comp = t.open_top("comp", "VP");
    let v = t.full("v", "V");
    t.set_features(HalfRef::top(np), feats(&[("case", "nom")]));
    t.set_features(HalfRef::top(comp), feats(&[("def", def)]));
    t.anchor(v, verb);
    t.child(seg, np).child(seg, vp).child(vp, comp).child(vp, v);
    t
}

fn embedded_full() -> QuasiTree {
    let mut t = QuasiTree::new("zu_reparieren_full");
    let root = t.open_bottom("vp", "VP");
    let agro = t.full("agro", "AgrOP");
    let np = t.open_top("obj", "NP");
    let v = t.full("v", "V");
    t.set_features(HalfRef::bottom(root), feats(&[("def", "no")]));
    t.set_features(HalfRef::top(np), feats(&[("case", "acc")]));
    t.anchor(v, "zu reparieren");
    t.child(root, agro).child(agro, np).child(agro, v);
    t
}

fn embedded_defective() -> QuasiTree {
    let mut t = QuasiTree::new("zu_reparieren_def");
    let seg = t.open_bottom("objseg", "VP");
    let np = t.open_top("obj", "NP");
    let vp = t.full("vp", "VP");
    let v = t.full("v", "V");
    t.set_features(HalfRef::bottom(seg), feats(&[("def", "yes")]));
    t.set_features(HalfRef::top(np), feats(&[("case", "acc")]));
    t.set_features(HalfRef::top(vp), feats(&[("def", "yes")]));
    t.set_features(HalfRef::bottom(vp), feats(&[("def", "yes")]));
    t.anchor(v, "zu reparieren");
    t.child(seg, np).child(seg, vp).child(vp, v);
    t
}

fn noun_phrase(name: &str, words: &str, case: &str) -> QuasiTree {
    let mut t = QuasiTree::new(name);
    let np = t.open_bottom("np", "NP");
    t.set_features(HalfRef::bottom(np), feats(&[("case", case)]));
    t.anchor(np, words);
    t
}

pub fn build_german_grammar() -> Grammar {
    let mut g = Grammar::new("german");
    for t in [
        complementizer(),
        matrix("versprochen_full", "versprochen hat", "no"),
        matrix("versprochen_def", "versprochen hat", "yes"),
        matrix("verlangte_full", "verlangte", "no"),
        embedded_full(),
        embedded_defective(),
        noun_phrase("niemand", "niemand", "nom"),
        noun_phrase("den_kuehlschrank", "den Kühlschrank", "acc"),
    ] {
        g.add_tree(t).expect("static German grammar is valid");
    }
    g
}
