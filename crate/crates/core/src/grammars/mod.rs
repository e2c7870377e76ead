//! Demonstration grammars and judgment corpora.
//!
//! The German grammar covers long scrambling out of infinitival
//! complements of *versprechen* versus *verlangen*; the English grammar
//! covers ECM (*believe*, *expect*) against object control (*persuade*).
//! Both are reconstructions built for these contrasts, not broad-coverage
//! grammars.

mod english;
mod german;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

pub use english::build_english_grammar;
pub use german::build_german_grammar;

use crate::grammar::Grammar;
use crate::tag::{anbcn_fixture, encode_tag};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Expected {
    Grammatical,
    Ungrammatical,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusCase {
    pub tokens: Vec<String>,
    pub expected: Expected,
    pub source: String,
}

impl CorpusCase {
    pub fn new(source: &str, sentence: &str, expected: Expected) -> Self {
        CorpusCase {
            tokens: sentence.split_whitespace().map(String::from).collect(),
            expected,
            source: source.to_string(),
        }
    }

    pub fn sentence(&self) -> String {
        self.tokens.join(" ")
    }
}

/// The encoded a^n b c^n TAG fixture.
pub fn build_tagcount_grammar() -> Grammar {
    encode_tag(&anbcn_fixture()).expect("fixture is a valid TAG")
}

/// Built-in grammar by name: `german`, `english` or `tagcount`.
pub fn builtin_grammar(name: &str) -> Option<Grammar> {
    match name {
        "german" => Some(build_german_grammar()),
        "english" => Some(build_english_grammar()),
        "tagcount" => Some(build_tagcount_grammar()),
        _ => None,
    }
}

fn cases(rows: &[(&str, &str, bool)]) -> Vec<CorpusCase> {
    rows.iter()
        .map(|&(src, s, ok)| {
            let e = if ok {
                Expected::Grammatical
            } else {
                Expected::Ungrammatical
            };
            CorpusCase::new(src, s, e)
        })
        .collect()
}

pub fn german_corpus() -> Vec<CorpusCase> {
    cases(&[
        ("ex-1", "daß den Kühlschrank niemand zu reparieren versprochen hat", true),
        ("ex-2", "daß den Kühlschrank niemand zu reparieren verlangte", false),
        ("base-versprochen", "daß niemand den Kühlschrank zu reparieren versprochen hat", true),
        ("base-verlangte", "daß niemand den Kühlschrank zu reparieren verlangte", true),
        ("object-after-verb", "daß niemand zu reparieren den Kühlschrank versprochen hat", false),
        ("two-accusatives", "daß den Kühlschrank den Kühlschrank zu reparieren versprochen hat", false),
        ("two-nominatives", "daß niemand niemand zu reparieren versprochen hat", false),
        ("no-matrix-verb", "daß niemand den Kühlschrank zu reparieren", false),
        ("complementizer-last", "den Kühlschrank niemand zu reparieren versprochen hat daß", false),
        ("extraposed-scrambled", "daß den Kühlschrank niemand versprochen hat zu reparieren", false),
    ])
}

pub fn english_corpus() -> Vec<CorpusCase> {
    cases(&[
        ("ex-3", "we believed him to like kidneys", true),
        ("fn-3", "we expect there to be a riot", true),
        ("ecm-nominative", "we believed he to like kidneys", false),
        ("ecm-expect", "we expect him to like kidneys", true),
        ("ecm-capitalized", "We believed him to like kidneys", true),
        ("control", "we persuaded him to like kidneys", true),
        ("control-nominative", "we persuaded he to like kidneys", false),
        ("control-expletive", "we persuaded there to like kidneys", false),
        ("thematic-expletive", "we believed there to like kidneys", false),
        ("ecm-no-subject", "we believed to like kidneys", false),
        ("accusative-subject", "him believed him to like kidneys", false),
    ])
}

pub fn tagcount_corpus() -> Vec<CorpusCase> {
    cases(&[
        ("n0", "b", true),
        ("n1", "a b c", true),
        ("n2", "a a b c c", true),
        ("n3", "a a a b c c c", true),
        ("short", "a b", false),
        ("unbalanced", "a a b c", false),
        ("reversed", "c b a", false),
        ("interleaved", "a b a c c", false),
    ])
}

/// Corpora keyed by grammar name.
pub fn builtin_corpora() -> BTreeMap<String, Vec<CorpusCase>> {
    let mut m = BTreeMap::new();
    m.insert("german".to_string(), german_corpus());
    m.insert("english".to_string(), english_corpus());
    m.insert("tagcount".to_string(), tagcount_corpus());
    m
}
