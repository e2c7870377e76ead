//! The `.qtg` grammar format.
//!
//! ```text
//! grammar NAME
//! tree NAME
//! node ID cat=CAT [only=top|bot] [top={k=v,...}] [bot={k=v,...}] [anchor="tok tok"]
//! child PARENT[.top|.bot] CHILD POS
//! dlink ID.(top|bot) ID.(top|bot)
//! end
//! ```
//!
//! `child` hangs the child's top half under the parent's bottom half unless
//! `.top` is given. `only=top` declares a node with just a top half,
//! `only=bot` one with just a bottom half.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use qtsg_core::{Dlink, Grammar, HalfRef, NodeKind, QuasiTree, Side, Violation};

use super::{check_ident, parse_features, parse_quoted, tokenize, ParseError, Pos, Token};

/// Source positions of one tree's statements, for locating violations.
struct Spans {
    header: Pos,
    nodes: BTreeMap<String, Pos>,
    edges: Vec<Pos>,
    dlinks: Vec<Pos>,
}

struct Open {
    tree: QuasiTree,
    spans: Spans,
}

pub fn parse_grammar(text: &str) -> Result<Grammar, ParseError> {
    let mut grammar: Option<Grammar> = None;
    let mut open: Option<Open> = None;
    let mut last = Pos { line: 1, column: 1 };
    for (i, line) in text.lines().enumerate() {
        let toks = tokenize(line, i + 1)?;
        let Some(head) = toks.first() else { continue };
        last = head.pos;
        let args = &toks[1..];
        match head.text.as_str() {
            "grammar" => {
                if grammar.is_some() {
                    return Err(head.pos.duplicate("second `grammar` header"));
                }
                let name = one_arg(head, args, "grammar name")?;
                grammar = Some(Grammar::new(name));
            }
            "tree" => {
                let g = grammar
                    .as_ref()
                    .ok_or_else(|| head.pos.syntax("`tree` before `grammar` header"))?;
                if open.is_some() {
                    return Err(head.pos.syntax("`tree` inside another tree; missing `end`"));
                }
                let name = one_arg(head, args, "tree name")?;
                check_ident(name, args[0].pos, "tree name")?;
                if g.tree(name).is_some() {
                    return Err(args[0].pos.duplicate(format!("tree `{name}` defined twice")));
                }
                open = Some(Open {
                    tree: QuasiTree::new(name),
                    spans: Spans {
                        header: head.pos,
                        nodes: BTreeMap::new(),
                        edges: Vec::new(),
                        dlinks: Vec::new(),
                    },
                });
            }
            "end" => {
                if !args.is_empty() {
                    return Err(args[0].pos.syntax("unexpected text after `end`"));
                }
                let o = open
                    .take()
                    .ok_or_else(|| head.pos.syntax("`end` without `tree`"))?;
                finish(grammar.as_mut().expect("checked at `tree`"), o)?;
            }
            "node" | "child" | "dlink" => {
                let o = open
                    .as_mut()
                    .ok_or_else(|| head.pos.syntax(format!("`{}` outside a tree", head.text)))?;
                match head.text.as_str() {
                    "node" => node(o, head, args)?,
                    "child" => child(o, head, args)?,
                    _ => dlink(o, head, args)?,
                }
            }
            other => return Err(head.pos.syntax(format!("unknown statement `{other}`"))),
        }
    }
    if let Some(o) = open {
        return Err(o.spans.header.syntax(format!("tree `{}` lacks `end`", o.tree.name)));
    }
    grammar.ok_or_else(|| last.syntax("missing `grammar` header"))
}

fn one_arg<'a>(head: &Token, args: &'a [Token], what: &str) -> Result<&'a str, ParseError> {
    match args {
        [a] => Ok(&a.text),
        [] => Err(head.pos.syntax(format!("missing {what}"))),
        [_, extra, ..] => Err(extra.pos.syntax("unexpected extra argument")),
    }
}

fn node(o: &mut Open, head: &Token, args: &[Token]) -> Result<(), ParseError> {
    let id_tok = args.first().ok_or_else(|| head.pos.syntax("missing node id"))?;
    check_ident(&id_tok.text, id_tok.pos, "node id")?;
    if o.spans.nodes.contains_key(&id_tok.text) {
        return Err(id_tok.pos.duplicate(format!("node `{}` declared twice", id_tok.text)));
    }
    let mut seen: BTreeMap<&str, Pos> = BTreeMap::new();
    let (mut cat, mut only, mut top, mut bot, mut anchor) = (None, None, None, None, None);
    for t in &args[1..] {
        let (k, v, vpos) = t
            .key_value()
            .ok_or_else(|| t.pos.syntax(format!("expected `key=value`, found `{}`", t.text)))?;
        if seen.insert(k, t.pos).is_some() {
            return Err(t.pos.duplicate(format!("attribute `{k}` given twice")));
        }
        match k {
            "cat" => {
                check_ident(v, vpos, "category")?;
                cat = Some(v);
            }
            "only" => {
                only = Some(match v {
                    "top" => NodeKind::OpenTop,
                    "bot" => NodeKind::OpenBottom,
                    _ => return Err(vpos.syntax("`only` must be `top` or `bot`")),
                })
            }
            "top" => top = Some((parse_features(v, vpos)?, vpos)),
            "bot" => bot = Some((parse_features(v, vpos)?, vpos)),
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
    let cat = cat.ok_or_else(|| id_tok.pos.syntax(format!("node `{}` lacks `cat=`", id_tok.text)))?;
    let kind = only.unwrap_or(NodeKind::Full);
    let n = o.tree.add_node(&id_tok.text, cat, kind);
    for (fs, side) in [(top, Side::Top), (bot, Side::Bottom)] {
        if let Some((fs, p)) = fs {
            if !kind.has(side) {
                return Err(p.semantic(format!("node `{}` has no {} half", id_tok.text, side.as_str())));
            }
            o.tree.set_features(HalfRef { node: n, side }, fs);
        }
    }
    if let Some(a) = anchor {
        o.tree.anchor(n, &a);
    }
    o.spans.nodes.insert(id_tok.text.clone(), id_tok.pos);
    Ok(())
}

/// `ID` or `ID.top` / `ID.bot`.
fn half(o: &Open, t: &Token, default: Option<Side>) -> Result<HalfRef, ParseError> {
    let (id, side) = match t.text.split_once('.') {
        Some((id, "top")) => (id, Side::Top),
        Some((id, "bot")) => (id, Side::Bottom),
        Some(_) => return Err(t.pos.syntax(format!("expected `.top` or `.bot` in `{}`", t.text))),
        None => match default {
            Some(s) => (t.text.as_str(), s),
            None => return Err(t.pos.syntax(format!("`{}` needs `.top` or `.bot`", t.text))),
        },
    };
    let node = o
        .tree
        .node_index(id)
        .ok_or_else(|| t.pos.semantic(format!("unknown node `{id}`")))?;
    Ok(HalfRef { node, side })
}

fn child(o: &mut Open, head: &Token, args: &[Token]) -> Result<(), ParseError> {
    let [p, c, pos] = args else {
        return Err(head.pos.syntax("expected `child PARENT CHILD POS`"));
    };
    let parent = half(o, p, Some(Side::Bottom))?;
    if c.text.contains('.') {
        return Err(c.pos.syntax("the child is always attached by its top half"));
    }
    let child = half(o, c, Some(Side::Top))?.node;
    let position: usize = pos
        .text
        .parse()
        .map_err(|_| pos.pos.syntax(format!("expected a position, found `{}`", pos.text)))?;
    o.tree.add_edge(parent, child, position);
    o.spans.edges.push(head.pos);
    Ok(())
}

fn dlink(o: &mut Open, head: &Token, args: &[Token]) -> Result<(), ParseError> {
    let [u, l] = args else {
        return Err(head.pos.syntax("expected `dlink UPPER LOWER`"));
    };
    let (upper, lower) = (half(o, u, None)?, half(o, l, None)?);
    o.tree.add_dlink(upper, lower);
    o.spans.dlinks.push(head.pos);
    Ok(())
}

fn finish(g: &mut Grammar, mut o: Open) -> Result<(), ParseError> {
    if let Err(violations) = o.tree.validate() {
        let v = &violations[0];
        return Err(locate(&o, v).semantic(format!("tree `{}`: {v}", o.tree.name)));
    }
    g.add_tree(o.tree)
        .map_err(|e| o.spans.header.semantic(e.to_string()))?;
    Ok(())
}

fn locate(o: &Open, v: &Violation) -> Pos {
    let t = &o.tree;
    let node = |id: &str| o.spans.nodes.get(id).copied().unwrap_or(o.spans.header);
    let edge_where = |f: &dyn Fn(&qtsg_core::Edge) -> bool| {
        t.edges
            .iter()
            .position(|e| f(e))
            .map_or(o.spans.header, |i| o.spans.edges[i])
    };
    match v {
        Violation::DuplicateNode(id)
        | Violation::BadCategory(id)
        | Violation::AnchorWithoutBottom(id)
        | Violation::EmptyAnchor(id)
        | Violation::AnchoredWithChildren(id) => node(id),
        Violation::MultipleParents(id) => {
            let n = t.node_index(id);
            let mut hits = t.edges.iter().enumerate().filter(|(_, e)| Some(e.child) == n);
            hits.nth(1).map_or(node(id), |(i, _)| o.spans.edges[i])
        }
        Violation::DanglingEdge { parent, child } => edge_where(&|e| {
            t.half_name(e.parent) == *parent && t.half_name(HalfRef::top(e.child)) == *child
        }),
        Violation::BadPositions { parent } => edge_where(&|e| t.half_name(e.parent) == *parent),
        Violation::DanglingDlink { upper, lower } => t
            .dlinks
            .iter()
            .position(|d| t.half_name(d.upper) == *upper && t.half_name(d.lower) == *lower)
            .and_then(|i| o.spans.dlinks.get(i).copied())
            .unwrap_or(o.spans.header),
        Violation::Cycle(_) | Violation::Unanchored => o.spans.header,
    }
}

fn half_text(t: &QuasiTree, h: HalfRef) -> String {
    format!("{}.{}", t.nodes[h.node].id, h.side.as_str())
}

/// The link every full node gets on validation; not written out.
fn is_intra(t: &QuasiTree, d: &Dlink) -> bool {
    d.upper.node == d.lower.node
        && d.upper.side == Side::Top
        && d.lower.side == Side::Bottom
        && t.nodes[d.upper.node].kind == NodeKind::Full
}

pub fn serialize_tree(t: &QuasiTree, out: &mut String) {
    let _ = writeln!(out, "tree {}", t.name);
    for n in &t.nodes {
        let _ = write!(out, "node {} cat={}", n.id, n.category);
        match n.kind {
            NodeKind::Full => {}
            NodeKind::OpenTop => out.push_str(" only=top"),
            NodeKind::OpenBottom => out.push_str(" only=bot"),
        }
        if n.kind.has(Side::Top) && !n.top.is_empty() {
            let _ = write!(out, " top={}", n.top);
        }
        if n.kind.has(Side::Bottom) && !n.bottom.is_empty() {
            let _ = write!(out, " bot={}", n.bottom);
        }
        if let Some(a) = &n.anchor {
            let _ = write!(out, " anchor=\"{}\"", a.join(" "));
        }
        out.push('\n');
    }
    let mut edges = t.edges.clone();
    edges.sort_by_key(|e| (e.parent.node, e.parent.side, e.position));
    for e in &edges {
        let parent = match e.parent.side {
            Side::Bottom => t.nodes[e.parent.node].id.clone(),
            Side::Top => half_text(t, e.parent),
        };
        let _ = writeln!(out, "child {} {} {}", parent, t.nodes[e.child].id, e.position);
    }
    for d in t.dlinks.iter().filter(|d| !is_intra(t, d)) {
        let _ = writeln!(out, "dlink {} {}", half_text(t, d.upper), half_text(t, d.lower));
    }
    out.push_str("end\n");
}

pub fn serialize_grammar(g: &Grammar) -> String {
    let mut out = format!("grammar {}\n", g.name);
    for t in g.trees() {
        out.push('\n');
        serialize_tree(t, &mut out);
    }
    out
}
