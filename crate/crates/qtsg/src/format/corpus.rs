//! Corpus files: one sentence per line, `*` marks an ungrammatical one, a
//! trailing `# comment` names the case.

use std::fmt::Write as _;

use qtsg_core::grammars::{CorpusCase, Expected};

use super::{ParseError, Pos};

pub fn parse_corpus(text: &str) -> Result<Vec<CorpusCase>, ParseError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let (body, comment) = match line.split_once('#') {
            Some((b, c)) => (b, Some(c.trim())),
            None => (line, None),
        };
        let trimmed = body.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = body.chars().count() - trimmed.chars().count();
        let pos = Pos { line: lineno, column: indent + 1 };
        let (expected, sentence) = match trimmed.strip_prefix('*') {
            Some(rest) => (Expected::Ungrammatical, rest),
            None => (Expected::Grammatical, trimmed),
        };
        if sentence.trim().is_empty() {
            return Err(pos.syntax("`*` is not followed by a sentence"));
        }
        let source = match comment {
            Some(c) if !c.is_empty() => c.to_string(),
            _ => format!("line {lineno}"),
        };
        out.push(CorpusCase::new(&source, sentence, expected));
    }
    Ok(out)
}

pub fn serialize_corpus(cases: &[CorpusCase]) -> String {
    let mut out = String::new();
    for c in cases {
        let mark = match c.expected {
            Expected::Grammatical => "",
            Expected::Ungrammatical => "*",
        };
        let _ = writeln!(out, "{mark}{}  # {}", c.sentence(), c.source);
    }
    out
}
