//! The `.tag` format for tree adjoining grammars.
//!
//! ```text
//! tag-grammar NAME start=CAT
//! initial NAME            (or: auxiliary NAME)
//! node ID cat=CAT [kind=subst|foot] [adj=na|oa] [anchor="tok tok"]
//! child PARENT CHILD POS
//! end
//! ```
//!
//! The first node of a tree is its root.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use qtsg_core::tag::{Constraint, TagGrammar, TagNodeKind, TagTree};

use super::{check_ident, parse_quoted, tokenize, ParseError, Pos, Token};

struct Open {
    tree: TagTree,
    auxiliary: bool,
    header: Pos,
    /// (parent, child, position, where)
    edges: Vec<(usize, usize, usize, Pos)>,
}

/// True when the first statement of `text` is a `tag-grammar` header.
pub fn looks_like_tag(text: &str) -> bool {
    text.lines()
        .filter_map(|l| tokenize(l, 0).ok())
        .find_map(|t| t.into_iter().next())
        .is_some_and(|t| t.text == "tag-grammar")
}

pub fn parse_tag_grammar(text: &str) -> Result<TagGrammar, ParseError> {
    let mut grammar: Option<TagGrammar> = None;
    let mut names: BTreeSet<String> = BTreeSet::new();
    let mut open: Option<Open> = None;
    let mut last = Pos { line: 1, column: 1 };
    for (i, line) in text.lines().enumerate() {
        let toks = tokenize(line, i + 1)?;
        let Some(head) = toks.first() else { continue };
        last = head.pos;
        let args = &toks[1..];
        match head.text.as_str() {
            "tag-grammar" => {
                if grammar.is_some() {
                    return Err(head.pos.duplicate("second `tag-grammar` header"));
                }
                let [name, start] = args else {
                    return Err(head.pos.syntax("expected `tag-grammar NAME start=CAT`"));
                };
                let start_cat = match start.key_value() {
                    Some(("start", v, vpos)) => {
                        check_ident(v, vpos, "category")?;
                        v
                    }
                    _ => return Err(start.pos.syntax("expected `start=CAT`")),
                };
                grammar = Some(TagGrammar::new(&name.text, start_cat));
            }
            kw @ ("initial" | "auxiliary") => {
                if grammar.is_none() {
                    return Err(head.pos.syntax(format!("`{kw}` before `tag-grammar` header")));
                }
                if open.is_some() {
                    return Err(head.pos.syntax(format!("`{kw}` inside another tree; missing `end`")));
                }
                let [name] = args else {
                    return Err(head.pos.syntax(format!("expected `{kw} NAME`")));
                };
                check_ident(&name.text, name.pos, "tree name")?;
                if !names.insert(name.text.clone()) {
                    return Err(name.pos.duplicate(format!("tree `{}` defined twice", name.text)));
                }
                open = Some(Open {
                    tree: TagTree::new(&name.text),
                    auxiliary: kw == "auxiliary",
                    header: head.pos,
                    edges: Vec::new(),
                });
            }
            "node" => node(open_tree(&mut open, head)?, head, args)?,
            "child" => child(open_tree(&mut open, head)?, head, args)?,
            "end" => {
                if let Some(extra) = args.first() {
                    return Err(extra.pos.syntax("unexpected text after `end`"));
                }
                let o = open.take().ok_or_else(|| head.pos.syntax("`end` without a tree"))?;
                finish(grammar.as_mut().expect("checked at tree header"), o)?;
            }
            other => return Err(head.pos.syntax(format!("unknown statement `{other}`"))),
        }
    }
    if let Some(o) = open {
        return Err(o.header.syntax(format!("tree `{}` lacks `end`", o.tree.name)));
    }
    grammar.ok_or_else(|| last.syntax("missing `tag-grammar` header"))
}

fn open_tree<'a>(open: &'a mut Option<Open>, head: &Token) -> Result<&'a mut Open, ParseError> {
    open.as_mut()
        .ok_or_else(|| head.pos.syntax(format!("`{}` outside a tree", head.text)))
}

fn node(o: &mut Open, head: &Token, args: &[Token]) -> Result<(), ParseError> {
    let id = args.first().ok_or_else(|| head.pos.syntax("missing node id"))?;
    check_ident(&id.text, id.pos, "node id")?;
    if o.tree.node_index(&id.text).is_some() {
        return Err(id.pos.duplicate(format!("node `{}` declared twice", id.text)));
    }
    let mut seen = BTreeSet::new();
    let (mut cat, mut kind, mut adj, mut anchor) = (None, TagNodeKind::Internal, Constraint::Allowed, None);
    for t in &args[1..] {
        let (k, v, vpos) = t
            .key_value()
            .ok_or_else(|| t.pos.syntax(format!("expected `key=value`, found `{}`", t.text)))?;
        if !seen.insert(k) {
            return Err(t.pos.duplicate(format!("attribute `{k}` given twice")));
        }
        match k {
            "cat" => {
                check_ident(v, vpos, "category")?;
                cat = Some(v);
            }
            "kind" => {
                kind = match v {
                    "subst" => TagNodeKind::Substitution,
                    "foot" => TagNodeKind::Foot,
                    _ => return Err(vpos.syntax("`kind` must be `subst` or `foot`")),
                }
            }
            "adj" => {
                adj = match v {
                    "na" => Constraint::Forbidden,
                    "oa" => Constraint::Obligatory,
                    _ => return Err(vpos.syntax("`adj` must be `na` or `oa`")),
                }
            }
            "anchor" => {
                let a = parse_quoted(v, vpos)?;
                if a.split_whitespace().next().is_none() {
                    return Err(vpos.semantic("empty anchor"));
                }
                anchor = Some(a);
            }
            _ => return Err(t.pos.syntax(format!("unknown node attribute `{k}`"))),
        }
    }
    let cat = cat.ok_or_else(|| id.pos.syntax(format!("node `{}` lacks `cat=`", id.text)))?;
    let n = match (kind, anchor) {
        (TagNodeKind::Internal, Some(a)) => o.tree.anchored(&id.text, cat, &a),
        (TagNodeKind::Internal, None) => o.tree.add(&id.text, cat),
        (_, Some(_)) => return Err(id.pos.semantic("substitution and foot nodes cannot be anchored")),
        (TagNodeKind::Substitution, None) => o.tree.substitution(&id.text, cat),
        (TagNodeKind::Foot, None) => o.tree.foot(&id.text, cat),
    };
    o.tree.constrain(n, adj);
    Ok(())
}

fn child(o: &mut Open, head: &Token, args: &[Token]) -> Result<(), ParseError> {
    let [p, c, pos] = args else {
        return Err(head.pos.syntax("expected `child PARENT CHILD POS`"));
    };
    let find = |t: &Token| {
        o.tree
            .node_index(&t.text)
            .ok_or_else(|| t.pos.semantic(format!("unknown node `{}`", t.text)))
    };
    let (parent, kid) = (find(p)?, find(c)?);
    let position: usize = pos
        .text
        .parse()
        .map_err(|_| pos.pos.syntax(format!("expected a position, found `{}`", pos.text)))?;
    o.edges.push((parent, kid, position, head.pos));
    Ok(())
}

fn finish(g: &mut TagGrammar, mut o: Open) -> Result<(), ParseError> {
    let mut by_parent: BTreeMap<usize, Vec<(usize, usize, Pos)>> = BTreeMap::new();
    for &(p, c, i, pos) in &o.edges {
        by_parent.entry(p).or_default().push((i, c, pos));
    }
    for (p, mut kids) in by_parent {
        kids.sort_by_key(|k| (k.0, k.1));
        for (k, &(i, c, pos)) in kids.iter().enumerate() {
            if i != k {
                return Err(pos.semantic(format!(
                    "child positions under `{}` are not dense from 0",
                    o.tree.nodes[p].id
                )));
            }
            o.tree.child(p, c);
        }
    }
    let (header, aux) = (o.header, o.auxiliary);
    let mut probe = TagGrammar::new("probe", &g.start);
    if aux {
        probe.auxiliary.push(o.tree.clone());
    } else {
        probe.initial.push(o.tree.clone());
    }
    probe.validate().map_err(|e| header.semantic(e.to_string()))?;
    if aux {
        g.auxiliary.push(o.tree);
    } else {
        g.initial.push(o.tree);
    }
    Ok(())
}

fn serialize_tree(kw: &str, t: &TagTree, out: &mut String) {
    let _ = writeln!(out, "\n{kw} {}", t.name);
    for n in &t.nodes {
        let _ = write!(out, "node {} cat={}", n.id, n.category);
        match n.kind {
            TagNodeKind::Internal => {}
            TagNodeKind::Substitution => out.push_str(" kind=subst"),
            TagNodeKind::Foot => out.push_str(" kind=foot"),
        }
        match n.constraint {
            Constraint::Allowed => {}
            Constraint::Forbidden => out.push_str(" adj=na"),
            Constraint::Obligatory => out.push_str(" adj=oa"),
        }
        if let Some(a) = &n.anchor {
            let _ = write!(out, " anchor=\"{}\"", a.join(" "));
        }
        out.push('\n');
    }
    for n in &t.nodes {
        for (i, &c) in n.children.iter().enumerate() {
            let _ = writeln!(out, "child {} {} {}", n.id, t.nodes[c].id, i);
        }
    }
    out.push_str("end\n");
}

pub fn serialize_tag_grammar(g: &TagGrammar) -> String {
    let mut out = format!("tag-grammar {} start={}\n", g.name, g.start);
    for t in &g.initial {
        serialize_tree("initial", t, &mut out);
    }
    for t in &g.auxiliary {
        serialize_tree("auxiliary", t, &mut out);
    }
    out
}
