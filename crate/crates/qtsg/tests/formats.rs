use qtsg::format::grammar::{parse_grammar, serialize_grammar};
use qtsg::render::{ascii, dot, STRETCH_MARK};
use qtsg::{ErrorKind, ParseError};
use qtsg_core::grammars::build_german_grammar;
use qtsg_core::{recognize, NodeKind};

const SMALL: &str = r#"# a comment line
grammar small

tree t   # trailing comment
node s cat=S top={x=1}
node np cat=NP only=top top={case=nom}
node v cat=V anchor="sleeps"
child s np 0
child s v 1
end

tree he
node np cat=NP only=bot bot={case=nom} anchor="He"
end
"#;

fn err(text: &str) -> ParseError {
    parse_grammar(text).unwrap_err()
}

fn at(e: &ParseError) -> (usize, usize, ErrorKind) {
    (e.line, e.column, e.kind)
}

#[test]
fn parses_a_small_grammar() {
    let g = parse_grammar(SMALL).unwrap();
    assert_eq!(g.name, "small");
    let t = g.tree("t").unwrap();
    assert_eq!(t.nodes[1].kind, NodeKind::OpenTop);
    assert_eq!(t.nodes[0].top.get("x"), Some("1"));
    assert!(recognize(&g, &["he", "sleeps"]).unwrap().accepted);
    assert!(!recognize(&g, &["sleeps", "he"]).unwrap().accepted);
    let again = parse_grammar(&serialize_grammar(&g)).unwrap();
    assert_eq!(again.trees(), g.trees());
}

#[test]
fn top_half_children_and_dlinks() {
    let text = "grammar g\ntree t\nnode a cat=A\nnode b cat=B anchor=\"b\"\nnode c cat=C anchor=\"c\"\nchild a.top b 0\nchild a c 0\ndlink b.top c.bot\nend\n";
    let g = parse_grammar(text).unwrap();
    let t = g.tree("t").unwrap();
    assert_eq!(t.edges.len(), 2);
    assert!(serialize_grammar(&g).contains("child a.top b 0"));
    assert!(serialize_grammar(&g).contains("dlink b.top c.bot"));
    assert_eq!(parse_grammar(&serialize_grammar(&g)).unwrap().trees(), g.trees());
}

#[test]
fn syntax_errors_are_positioned() {
    assert_eq!(at(&err("tree t\n")), (1, 1, ErrorKind::Syntax));
    assert_eq!(at(&err("grammar g\nfrobnicate\n")), (2, 1, ErrorKind::Syntax));
    assert_eq!(at(&err("grammar g\ntree t\nnode a cat=A zap=1\nend\n")), (3, 14, ErrorKind::Syntax));
    assert_eq!(at(&err("grammar g\ntree t\nnode a cat=A top={x}\nend\n")), (3, 18, ErrorKind::Syntax));
    assert_eq!(at(&err("grammar g\ntree t\nnode a cat=A anchor=\"x\n")), (3, 21, ErrorKind::Syntax));
    assert_eq!(at(&err("grammar g\ntree t\nnode a cat=A anchor=\"x\"\nchild a b\nend\n")), (4, 1, ErrorKind::Syntax));
    assert_eq!(at(&err("grammar g\ntree t\nnode a cat=A anchor=\"x\"\n")), (2, 1, ErrorKind::Syntax));
    assert_eq!(at(&err("grammar g\ntree t\nnode a anchor=\"x\"\nend\n")), (3, 6, ErrorKind::Syntax));
    assert_eq!(at(&err("grammar g\ntree t\nnode a cat=A only=mid\nend\n")), (3, 19, ErrorKind::Syntax));
}

#[test]
fn semantic_errors_are_positioned() {
    // Unknown node in a child statement.
    let e = err("grammar g\ntree t\nnode a cat=A anchor=\"x\"\nchild a zz 0\nend\n");
    assert_eq!(at(&e), (4, 9, ErrorKind::Semantic));
    // A dlink naming a half the node lacks.
    let e = err("grammar g\ntree t\nnode a cat=A only=top\nnode b cat=B anchor=\"x\"\ndlink a.bot b.bot\nend\n");
    assert_eq!(at(&e), (5, 1, ErrorKind::Semantic));
    assert!(e.message.contains("dangling dlink"), "{e}");
    // Positions with a gap.
    let e = err("grammar g\ntree t\nnode a cat=A\nnode b cat=B anchor=\"x\"\nchild a b 1\nend\n");
    assert_eq!(at(&e), (5, 1, ErrorKind::Semantic));
    // A cycle is reported at the tree header.
    let e = err("grammar g\ntree t\nnode a cat=A\nnode b cat=B anchor=\"x\"\nchild a b 0\ndlink b.bot a.top\nend\n");
    assert_eq!(at(&e), (2, 1, ErrorKind::Semantic));
    assert!(e.message.contains("cycle"), "{e}");
    // No anchor at all.
    let e = err("grammar g\ntree t\nnode a cat=A\nend\n");
    assert_eq!(at(&e), (2, 1, ErrorKind::Semantic));
    // Features on a missing half.
    let e = err("grammar g\ntree t\nnode a cat=A only=top bot={x=1}\nend\n");
    assert_eq!(at(&e), (3, 27, ErrorKind::Semantic));
    // Anchor on an open top.
    let e = err("grammar g\ntree t\nnode a cat=A only=top anchor=\"x\"\nend\n");
    assert_eq!(at(&e), (3, 6, ErrorKind::Semantic));
}

#[test]
fn duplicates_are_reported() {
    let e = err("grammar g\ntree t\nnode a cat=A anchor=\"x\"\nnode a cat=B\nend\n");
    assert_eq!(at(&e), (4, 6, ErrorKind::Duplicate));
    let e = err("grammar g\ntree t\nnode a cat=A anchor=\"x\"\nend\ntree t\n");
    assert_eq!(at(&e), (5, 6, ErrorKind::Duplicate));
    let e = err("grammar g\ngrammar h\n");
    assert_eq!(at(&e), (2, 1, ErrorKind::Duplicate));
    let e = err("grammar g\ntree t\nnode a cat=A cat=B\nend\n");
    assert_eq!(at(&e), (3, 14, ErrorKind::Duplicate));
    assert!(e.to_string().starts_with("3:14: duplicate error:"), "{e}");
}

#[test]
fn utf8_columns() {
    let e = err("grammar g\ntree t\nnode ä cat=Ä anchor=\"ö\" bogus\nend\n");
    assert_eq!(at(&e), (3, 25, ErrorKind::Syntax));
}

const EX1: [&str; 8] = ["daß", "den", "Kühlschrank", "niemand", "zu", "reparieren", "versprochen", "hat"];

#[test]
fn ascii_marks_stretched_nodes() {
    let g = build_german_grammar();
    let d = &recognize(&g, &EX1).unwrap().derivations[0];
    let text = ascii(&d.tree, &d.workspace);
    assert_eq!(text.lines().count(), d.tree.len());
    assert_eq!(text.matches(STRETCH_MARK).count(), 2);
    assert!(text.starts_with("C\n"));
    assert!(text.contains("  C \"daß\"\n"));
    assert!(text.contains("NP {case=acc} \"den Kühlschrank\""));
}

#[test]
fn dot_has_one_node_per_tree_node() {
    let g = build_german_grammar();
    let d = &recognize(&g, &EX1).unwrap().derivations[0];
    let text = dot(&d.tree, &d.workspace, "ex \"1\"");
    assert!(text.starts_with("digraph \"ex \\\"1\\\"\" {\n"));
    assert!(text.trim_end().ends_with('}'));
    let nodes = text.lines().filter(|l| l.contains("[label=")).count();
    assert_eq!(nodes, d.tree.len());
    let solid = text.lines().filter(|l| l.contains("->") && !l.contains("dashed")).count();
    assert_eq!(solid, d.tree.len() - 1);
    assert_eq!(text.lines().filter(|l| l.contains("style=dashed")).count(), 1);
}
