use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::quasi_tree::{QuasiTree, Violation};

/// Lookup key for an anchor: its lower-cased tokens.
pub type AnchorKey = Vec<String>;

pub fn normalize_tokens<'a, I: IntoIterator<Item = &'a str>>(tokens: I) -> Vec<String> {
    tokens
        .into_iter()
        .flat_map(str::split_whitespace)
        .map(str::to_lowercase)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrammarError {
    DuplicateTree(String),
    Invalid { tree: String, violations: Vec<Violation> },
}

impl fmt::Display for GrammarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrammarError::DuplicateTree(n) => write!(f, "duplicate tree name `{}`", n),
            GrammarError::Invalid { tree, violations } => {
                write!(f, "tree `{}` is invalid:", tree)?;
                for v in violations {
                    write!(f, " {};", v)?;
                }
                Ok(())
            }
        }
    }
}

/// A named set of validated quasi-trees plus the anchor lexicon.
///
/// Trees keep their insertion order; the lexicon is derived from the trees'
/// anchors and is always complete.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grammar {
    pub name: String,
    trees: Vec<QuasiTree>,
    lexicon: BTreeMap<AnchorKey, BTreeSet<String>>,
}

impl Grammar {
    pub fn new(name: &str) -> Self {
        Grammar {
            name: name.to_string(),
            trees: Vec::new(),
            lexicon: BTreeMap::new(),
        }
    }

    /// Validates and adds a tree.
    pub fn add_tree(&mut self, mut tree: QuasiTree) -> Result<(), GrammarError> {
        if self.tree(&tree.name).is_some() {
            return Err(GrammarError::DuplicateTree(tree.name));
        }
        if let Err(violations) = tree.validate() {
            return Err(GrammarError::Invalid {
                tree: tree.name,
                violations,
            });
        }
        for anchor in tree.anchors() {
            let key = normalize_tokens(anchor.iter().map(String::as_str));
            self.lexicon
                .entry(key)
                .or_default()
                .insert(tree.name.clone());
        }
        self.trees.push(tree);
        Ok(())
    }

    pub fn trees(&self) -> &[QuasiTree] {
        &self.trees
    }

    pub fn tree(&self, name: &str) -> Option<&QuasiTree> {
        self.trees.iter().find(|t| t.name == name)
    }

    pub fn lexicon(&self) -> &BTreeMap<AnchorKey, BTreeSet<String>> {
        &self.lexicon
    }

    /// A copy without the named tree.
    pub fn without_tree(&self, name: &str) -> Grammar {
        let mut g = Grammar::new(&self.name);
        for t in self.trees.iter().filter(|t| t.name != name) {
            g.add_tree(t.clone()).expect("subset of a valid grammar");
        }
        g
    }

    /// Longest anchor length in tokens.
    pub fn max_anchor_len(&self) -> usize {
        self.lexicon.keys().map(Vec::len).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(name: &str, anchor: &str) -> QuasiTree {
        let mut t = QuasiTree::new(name);
        let n = t.full("n", "S");
        t.anchor(n, anchor);
        t
    }

    #[test]
    fn lexicon_is_lowercased() {
        let mut g = Grammar::new("g");
        g.add_tree(single("a", "den Kühlschrank")).unwrap();
        let key = normalize_tokens(["den kühlschrank"]);
        assert!(g.lexicon()[&key].contains("a"));
        assert_eq!(g.max_anchor_len(), 2);
    }

    #[test]
    fn duplicate_names_rejected() {
        let mut g = Grammar::new("g");
        g.add_tree(single("a", "x")).unwrap();
        assert_eq!(
            g.add_tree(single("a", "y")),
            Err(GrammarError::DuplicateTree("a".into()))
        );
    }

    #[test]
    fn invalid_tree_rejected() {
        let mut g = Grammar::new("g");
        let mut t = QuasiTree::new("bad");
        t.full("n", "S");
        assert!(matches!(g.add_tree(t), Err(GrammarError::Invalid { .. })));
    }
}
