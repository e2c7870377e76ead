//! A small tree adjoining grammar engine and its encoding into quasi-tree
//! grammars.
//!
//! [`tag_derive`] rewrites derived trees top-down by substitution and
//! adjunction; it shares no code with the pairing solver, so it serves as
//! an independent reference. [`encode_tag`] turns every TAG tree into a
//! quasi-tree in which an adjunction is realized by two matches: the site's
//! top with the auxiliary root's bottom, and the auxiliary foot's top with
//! the site's bottom.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::derived::DerivedTree;
use crate::grammar::Grammar;
use crate::quasi_tree::{feats, HalfRef, QuasiTree};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Constraint {
    #[default]
    Allowed,
    Forbidden,
    Obligatory,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TagNodeKind {
    #[default]
    Internal,
    Substitution,
    Foot,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TagNode {
    pub id: String,
    pub category: String,
    pub kind: TagNodeKind,
    pub constraint: Constraint,
    pub anchor: Option<Vec<String>>,
    pub children: Vec<usize>,
}

/// An elementary TAG tree; node 0 is the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TagTree {
    pub name: String,
    pub nodes: Vec<TagNode>,
}

impl TagTree {
    pub fn new(name: &str) -> Self {
        TagTree {
            name: name.to_string(),
            nodes: Vec::new(),
        }
    }

    pub fn add(&mut self, id: &str, category: &str) -> usize {
        self.nodes.push(TagNode {
            id: id.to_string(),
            category: category.to_string(),
            kind: TagNodeKind::Internal,
            constraint: Constraint::Allowed,
            anchor: None,
            children: Vec::new(),
        });
        self.nodes.len() - 1
    }

    pub fn anchored(&mut self, id: &str, category: &str, anchor: &str) -> usize {
        let n = self.add(id, category);
        self.nodes[n].anchor = Some(anchor.split_whitespace().map(String::from).collect());
        n
    }

    pub fn foot(&mut self, id: &str, category: &str) -> usize {
        let n = self.add(id, category);
        self.nodes[n].kind = TagNodeKind::Foot;
        n
    }

    pub fn substitution(&mut self, id: &str, category: &str) -> usize {
        let n = self.add(id, category);
        self.nodes[n].kind = TagNodeKind::Substitution;
        n
    }

    pub fn child(&mut self, parent: usize, child: usize) -> &mut Self {
        self.nodes[parent].children.push(child);
        self
    }

    pub fn constrain(&mut self, node: usize, c: Constraint) -> &mut Self {
        self.nodes[node].constraint = c;
        self
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.id == id)
    }

    fn foot_index(&self) -> Option<usize> {
        self.nodes.iter().position(|n| n.kind == TagNodeKind::Foot)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TagGrammar {
    pub name: String,
    pub start: String,
    pub initial: Vec<TagTree>,
    pub auxiliary: Vec<TagTree>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TagError {
    pub tree: String,
    pub message: String,
}

impl fmt::Display for TagError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TAG tree `{}`: {}", self.tree, self.message)
    }
}

fn err(tree: &TagTree, message: &str) -> TagError {
    TagError {
        tree: tree.name.clone(),
        message: message.to_string(),
    }
}

impl TagGrammar {
    pub fn new(name: &str, start: &str) -> Self {
        TagGrammar {
            name: name.to_string(),
            start: start.to_string(),
            initial: Vec::new(),
            auxiliary: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<(), TagError> {
        let mut names = BTreeSet::new();
        for (t, aux) in self
            .initial
            .iter()
            .map(|t| (t, false))
            .chain(self.auxiliary.iter().map(|t| (t, true)))
        {
            if !names.insert(t.name.as_str()) {
                return Err(err(t, "duplicate tree name"));
            }
            check_tree(t, aux)?;
        }
        Ok(())
    }
}

fn check_tree(t: &TagTree, aux: bool) -> Result<(), TagError> {
    if t.nodes.is_empty() {
        return Err(err(t, "empty tree"));
    }
    let mut parents = vec![0usize; t.nodes.len()];
    for n in &t.nodes {
        for &c in &n.children {
            if c >= t.nodes.len() || c == 0 {
                return Err(err(t, "child index out of range or pointing at the root"));
            }
            parents[c] += 1;
        }
        if (n.anchor.is_some() || n.kind != TagNodeKind::Internal) && !n.children.is_empty() {
            return Err(err(t, "anchored, substitution and foot nodes must be leaves"));
        }
        if n.anchor.is_some() && n.kind != TagNodeKind::Internal {
            return Err(err(t, "substitution and foot nodes cannot be anchored"));
        }
    }
    if parents.iter().skip(1).any(|&p| p != 1) {
        return Err(err(t, "every non-root node needs exactly one parent"));
    }
    // Connectivity: parents counted once each and no cycles back to root,
    // so a walk from the root must reach every node.
    let mut seen = vec![false; t.nodes.len()];
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        if core::mem::replace(&mut seen[i], true) {
            return Err(err(t, "cycle"));
        }
        stack.extend(t.nodes[i].children.iter().copied());
    }
    if seen.iter().any(|s| !s) {
        return Err(err(t, "disconnected nodes"));
    }
    if !t.nodes.iter().any(|n| n.anchor.is_some()) {
        return Err(err(t, "tree has no anchor"));
    }
    let feet = t.nodes.iter().filter(|n| n.kind == TagNodeKind::Foot).count();
    if aux {
        if feet != 1 {
            return Err(err(t, "auxiliary tree needs exactly one foot"));
        }
        if t.nodes[t.foot_index().unwrap()].category != t.nodes[0].category {
            return Err(err(t, "foot and root categories differ"));
        }
    } else if feet != 0 {
        return Err(err(t, "initial tree has a foot"));
    }
    if t.nodes[0].kind != TagNodeKind::Internal {
        return Err(err(t, "root must be an internal node"));
    }
    Ok(())
}

/// A node of a TAG derived tree during top-down rewriting.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TagDerived {
    pub category: String,
    pub anchor: Option<Vec<String>>,
    pub open: bool,
    pub constraint: Constraint,
    pub children: Vec<TagDerived>,
}

/// Category, anchor and child structure only.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlainTree {
    pub category: String,
    pub anchor: Option<Vec<String>>,
    pub children: Vec<PlainTree>,
}

impl PlainTree {
    pub fn from_derived(tree: &DerivedTree) -> PlainTree {
        fn go(tree: &DerivedTree, i: usize) -> PlainTree {
            let n = &tree.nodes()[i];
            PlainTree {
                category: n.category.clone(),
                anchor: n.anchor.clone(),
                children: n.children.iter().map(|&c| go(tree, c)).collect(),
            }
        }
        go(tree, 0)
    }
}

impl TagDerived {
    fn instance(t: &TagTree, i: usize) -> TagDerived {
        let n = &t.nodes[i];
        TagDerived {
            category: n.category.clone(),
            anchor: n.anchor.clone(),
            open: n.kind != TagNodeKind::Internal,
            constraint: if n.kind == TagNodeKind::Foot {
                Constraint::Forbidden
            } else {
                n.constraint
            },
            children: n.children.iter().map(|&c| TagDerived::instance(t, c)).collect(),
        }
    }

    pub fn from_tree(t: &TagTree) -> TagDerived {
        TagDerived::instance(t, 0)
    }

    pub fn tokens(&self) -> usize {
        self.anchor.as_ref().map_or(0, Vec::len)
            + self.children.iter().map(TagDerived::tokens).sum::<usize>()
    }

    pub fn yield_tokens(&self, out: &mut Vec<String>) {
        if let Some(a) = &self.anchor {
            out.extend(a.iter().cloned());
        }
        for c in &self.children {
            c.yield_tokens(out);
        }
    }

    /// No open substitution slot and no unmet obligatory adjunction.
    pub fn complete(&self) -> bool {
        !(self.open && self.constraint != Constraint::Forbidden)
            && self.constraint != Constraint::Obligatory
            && self.children.iter().all(TagDerived::complete)
    }

    pub fn plain(&self) -> PlainTree {
        PlainTree {
            category: self.category.clone(),
            anchor: self.anchor.clone(),
            children: self.children.iter().map(TagDerived::plain).collect(),
        }
    }

    fn at_mut(&mut self, path: &[usize]) -> &mut TagDerived {
        match path.split_first() {
            None => self,
            Some((&i, rest)) => self.children[i].at_mut(rest),
        }
    }

    fn paths(&self, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(prefix.clone());
        for i in 0..self.children.len() {
            prefix.push(i);
            self.children[i].paths(prefix, out);
            prefix.pop();
        }
    }

    fn is_subst_slot(&self) -> bool {
        self.open && self.constraint != Constraint::Forbidden
    }

    /// Adjoins `aux` here: the auxiliary root takes this node's place and
    /// the foot takes over this node's anchor and children.
    pub fn adjoin(&self, aux: &TagTree) -> TagDerived {
        fn graft(t: &TagTree, i: usize, site: &TagDerived) -> TagDerived {
            let n = &t.nodes[i];
            if n.kind == TagNodeKind::Foot {
                TagDerived {
                    category: site.category.clone(),
                    anchor: site.anchor.clone(),
                    open: false,
                    constraint: Constraint::Forbidden,
                    children: site.children.clone(),
                }
            } else {
                TagDerived {
                    category: n.category.clone(),
                    anchor: n.anchor.clone(),
                    open: n.kind == TagNodeKind::Substitution,
                    constraint: n.constraint,
                    children: n.children.iter().map(|&c| graft(t, c, site)).collect(),
                }
            }
        }
        graft(aux, 0, self)
    }
}

/// Every terminal string of at most `max_len` tokens derivable from the
/// start category, as space-joined strings.
pub fn tag_derive(g: &TagGrammar, max_len: usize) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for t in tag_derived_trees(g, max_len) {
        let mut y = Vec::new();
        t.yield_tokens(&mut y);
        out.insert(y.join(" "));
    }
    out
}

/// Every complete derived tree with at most `max_len` tokens.
pub fn tag_derived_trees(g: &TagGrammar, max_len: usize) -> BTreeSet<TagDerived> {
    let mut seen: BTreeSet<TagDerived> = BTreeSet::new();
    let mut agenda: Vec<TagDerived> = Vec::new();
    for t in g.initial.iter().filter(|t| t.nodes[0].category == g.start) {
        let d = TagDerived::from_tree(t);
        if d.tokens() <= max_len && seen.insert(d.clone()) {
            agenda.push(d);
        }
    }
    let mut complete = BTreeSet::new();
    while let Some(state) = agenda.pop() {
        if state.complete() {
            complete.insert(state.clone());
        }
        let mut paths = Vec::new();
        state.paths(&mut Vec::new(), &mut paths);
        for path in paths {
            let mut probe = state.clone();
            let node = probe.at_mut(&path).clone();
            let mut next: Vec<TagDerived> = Vec::new();
            if node.is_subst_slot() {
                for t in g.initial.iter().filter(|t| t.nodes[0].category == node.category) {
                    next.push(TagDerived::from_tree(t));
                }
            } else if !node.open && node.constraint != Constraint::Forbidden {
                for a in g.auxiliary.iter().filter(|a| a.nodes[0].category == node.category) {
                    next.push(node.adjoin(a));
                }
            }
            for replacement in next {
                let mut s = state.clone();
                *s.at_mut(&path) = replacement;
                if s.tokens() <= max_len && seen.insert(s.clone()) {
                    agenda.push(s);
                }
            }
        }
    }
    complete
}

const ARG_SUFFIX: &str = "@arg";

/// Builds the quasi-tree grammar that emulates `g`.
///
/// Node kinds map as follows: internal and anchored nodes become full
/// quasi-nodes; substitution leaves and feet become open tops; auxiliary
/// roots become open bottoms. An initial tree rooted in the start category
/// keeps a full root; an initial tree that can be substituted also gets a
/// variant named `<name>@arg` with an open-bottom root.
///
/// Features restrict matches to the TAG operations: `id` ties the halves
/// of an internal node so it only matches itself or open halves, `slot`
/// keeps substitution slots off internal bottoms, `na`/`oa` encode
/// forbidden and obligatory adjunction, and `foot=+` on feet clashes with
/// `foot=-` on roots that forbid adjunction.
pub fn encode_tag(g: &TagGrammar) -> Result<Grammar, TagError> {
    g.validate()?;
    for t in &g.auxiliary {
        if t.nodes[0].constraint == Constraint::Obligatory {
            return Err(err(t, "obligatory adjunction at an auxiliary root is not encodable"));
        }
    }
    let subst_cats: BTreeSet<&str> = g
        .initial
        .iter()
        .chain(&g.auxiliary)
        .flat_map(|t| t.nodes.iter())
        .filter(|n| n.kind == TagNodeKind::Substitution)
        .map(|n| n.category.as_str())
        .collect();

    let mut out = Grammar::new(&g.name);
    let add = |out: &mut Grammar, q: QuasiTree| {
        out.add_tree(q).map_err(|e| TagError {
            tree: g.name.clone(),
            message: e.to_string(),
        })
    };
    for t in &g.initial {
        let cat = t.nodes[0].category.as_str();
        if t.nodes[0].constraint == Constraint::Obligatory && cat != g.start {
            return Err(err(t, "obligatory adjunction at a substitutable root is not encodable"));
        }
        if cat == g.start {
            add(&mut out, encode_tree(t, &t.name, false, false))?;
        }
        if subst_cats.contains(cat) {
            add(&mut out, encode_tree(t, &format!("{}{}", t.name, ARG_SUFFIX), true, false))?;
        }
    }
    for t in &g.auxiliary {
        add(&mut out, encode_tree(t, &t.name, true, true))?;
    }
    Ok(out)
}

fn encode_tree(t: &TagTree, name: &str, open_root: bool, aux: bool) -> QuasiTree {
    let mut q = QuasiTree::new(name);
    for (i, n) in t.nodes.iter().enumerate() {
        let id = format!("{}.{}", t.name, n.id);
        let idx = if i == 0 && open_root {
            let r = q.open_bottom(&n.id, &n.category);
            let f = if n.constraint == Constraint::Forbidden {
                feats(&[("foot", "-")])
            } else {
                feats(&[])
            };
            q.set_features(HalfRef::bottom(r), f);
            r
        } else {
            match n.kind {
                TagNodeKind::Substitution => {
                    let s = q.open_top(&n.id, &n.category);
                    q.set_features(HalfRef::top(s), feats(&[("slot", "subst")]));
                    s
                }
                TagNodeKind::Foot => {
                    let s = q.open_top(&n.id, &n.category);
                    q.set_features(HalfRef::top(s), feats(&[("foot", "+"), ("na", "-")]));
                    s
                }
                TagNodeKind::Internal => {
                    let x = q.full(&n.id, &n.category);
                    let (top, bot): (Vec<(&str, &str)>, Vec<(&str, &str)>) = match n.constraint {
                        Constraint::Allowed => (vec![("id", &id)], vec![("id", &id), ("slot", "node")]),
                        Constraint::Forbidden => (
                            vec![("id", &id), ("na", "+")],
                            vec![("id", &id), ("na", "+"), ("slot", "node")],
                        ),
                        Constraint::Obligatory => (
                            vec![("id", &id), ("oa", "pending")],
                            vec![("id", &id), ("oa", "met"), ("slot", "node")],
                        ),
                    };
                    q.set_features(HalfRef::top(x), feats(&top));
                    q.set_features(HalfRef::bottom(x), feats(&bot));
                    x
                }
            }
        };
        if let Some(a) = &n.anchor {
            q.anchor(idx, &a.join(" "));
        }
    }
    // An auxiliary root bottom has no `id`, so any site top or foot top may
    // claim it; a substitutable initial root only takes slots and feet.
    if open_root {
        let r = HalfRef::bottom(0);
        let mut f = q.nodes[0].bottom.clone();
        f.insert("na", "-").expect("literal");
        if !aux {
            f.insert("id", &format!("{}.{}", t.name, t.nodes[0].id)).expect("literal");
        }
        q.set_features(r, f);
    }
    for (i, n) in t.nodes.iter().enumerate() {
        for &c in &n.children {
            q.child(i, c);
        }
    }
    q
}

/// Names of encoded trees that came from auxiliary trees.
pub fn auxiliary_names(g: &TagGrammar) -> BTreeSet<String> {
    g.auxiliary.iter().map(|t| t.name.clone()).collect()
}

/// Initial `S -> b`, auxiliary `S -> a S* c`: the language a^n b c^n.
pub fn anbcn_fixture() -> TagGrammar {
    let mut g = TagGrammar::new("tagcount", "S");
    let mut alpha = TagTree::new("alpha");
    let s = alpha.add("s", "S");
    let b = alpha.anchored("b", "B", "b");
    alpha.child(s, b);
    g.initial.push(alpha);
    let mut beta = TagTree::new("beta");
    let r = beta.add("r", "S");
    let a = beta.anchored("a", "A", "a");
    let f = beta.foot("f", "S");
    let c = beta.anchored("c", "C", "c");
    beta.child(r, a).child(r, f).child(r, c);
    g.auxiliary.push(beta);
    g
}
