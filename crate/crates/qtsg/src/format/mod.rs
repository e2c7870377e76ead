//! Line-oriented text formats for grammars, TAG grammars and corpora.
//!
//! All three share one lexical layer: a statement per line, `#` starts a
//! comment outside quotes, tokens are separated by whitespace, and a token
//! may contain a `"quoted string"` or a `{braced list}` with spaces inside.

pub mod corpus;
pub mod grammar;
pub mod tag;

use std::fmt;

use qtsg_core::FeatureSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Syntax,
    Semantic,
    Duplicate,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorKind::Syntax => "syntax",
            ErrorKind::Semantic => "semantic",
            ErrorKind::Duplicate => "duplicate",
        })
    }
}

/// An error at a 1-based line and column (counted in characters).
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {kind} error: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ErrorKind,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Pos {
    pub line: usize,
    pub column: usize,
}

impl Pos {
    pub fn error(self, kind: ErrorKind, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            kind,
            message: message.into(),
        }
    }

    pub fn syntax(self, message: impl Into<String>) -> ParseError {
        self.error(ErrorKind::Syntax, message)
    }

    pub fn semantic(self, message: impl Into<String>) -> ParseError {
        self.error(ErrorKind::Semantic, message)
    }

    pub fn duplicate(self, message: impl Into<String>) -> ParseError {
        self.error(ErrorKind::Duplicate, message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Token {
    pub text: String,
    pub pos: Pos,
}

impl Token {
    /// Splits `key=value`; the value keeps its quotes or braces.
    pub fn key_value(&self) -> Option<(&str, &str, Pos)> {
        let eq = self.text.find('=')?;
        let (k, v) = (&self.text[..eq], &self.text[eq + 1..]);
        let column = self.pos.column + k.chars().count() + 1;
        Some((k, v, Pos { line: self.pos.line, column }))
    }
}

/// Tokens of one line, without its comment.
pub(crate) fn tokenize(line: &str, lineno: usize) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut current: Option<Token> = None;
    let (mut in_quote, mut depth) = (false, 0usize);
    let mut opened = Pos { line: lineno, column: 0 };
    for (i, c) in line.chars().enumerate() {
        let pos = Pos { line: lineno, column: i + 1 };
        if !in_quote && depth == 0 && (c.is_whitespace() || c == '#') {
            out.extend(current.take());
            if c == '#' {
                return Ok(out);
            }
            continue;
        }
        match c {
            '"' => {
                in_quote = !in_quote;
                if in_quote {
                    opened = pos;
                }
            }
            '{' if !in_quote => {
                if depth == 0 {
                    opened = pos;
                }
                depth += 1;
            }
            '}' if !in_quote => {
                if depth == 0 {
                    return Err(pos.syntax("unbalanced `}`"));
                }
                depth -= 1;
            }
            _ => {}
        }
        current
            .get_or_insert_with(|| Token { text: String::new(), pos })
            .text
            .push(c);
    }
    if in_quote {
        return Err(opened.syntax("unterminated string"));
    }
    if depth > 0 {
        return Err(opened.syntax("unterminated `{`"));
    }
    out.extend(current);
    Ok(out)
}

/// Parses `{a=1,b=2}`; `{}` is the empty set.
pub(crate) fn parse_features(text: &str, pos: Pos) -> Result<FeatureSet, ParseError> {
    let inner = text
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| pos.syntax(format!("expected `{{attr=value,...}}`, found `{text}`")))?;
    let mut fs = FeatureSet::new();
    for item in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (a, v) = item
            .split_once('=')
            .ok_or_else(|| pos.syntax(format!("feature `{item}` lacks `=`")))?;
        let (a, v) = (a.trim(), v.trim());
        if fs.get(a).is_some() {
            return Err(pos.duplicate(format!("attribute `{a}` given twice")));
        }
        fs.insert(a, v)
            .map_err(|_| pos.syntax(format!("malformed feature `{item}`")))?;
    }
    Ok(fs)
}

/// Parses `"tok tok"`.
pub(crate) fn parse_quoted(text: &str, pos: Pos) -> Result<String, ParseError> {
    text.strip_prefix('"')
        .and_then(|t| t.strip_suffix('"'))
        .filter(|t| !t.contains('"'))
        .map(str::to_string)
        .ok_or_else(|| pos.syntax(format!("expected a quoted string, found `{text}`")))
}

/// Identifiers: non-empty, no whitespace, quotes, braces, `=`, `#` or `.`.
pub(crate) fn check_ident(text: &str, pos: Pos, what: &str) -> Result<(), ParseError> {
    if text.is_empty() || text.chars().any(|c| c.is_whitespace() || "\"{}=#.,".contains(c)) {
        Err(pos.syntax(format!("invalid {what} `{text}`")))
    } else {
        Ok(())
    }
}
