//! Grammaticality judgments: lexical selection, composition, yield filter.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::derived::{stretched_nodes, yield_of, DerivedTree};
use crate::grammar::{normalize_tokens, AnchorKey, Grammar};
use crate::solve::{BoundExceeded, Solver, DEFAULT_MAX_PAIRINGS};
use crate::workspace::{Origin, Workspace};

/// One accepting analysis together with the workspace it was built in.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub tree: DerivedTree,
    pub workspace: Arc<Workspace>,
}

impl Derivation {
    /// Elementary trees used, one entry per instance.
    pub fn trees_used(&self) -> Vec<&str> {
        self.workspace
            .instances()
            .iter()
            .map(|i| i.tree.name.as_str())
            .collect()
    }

    /// Quasi-nodes whose top is realized strictly above their bottom.
    pub fn stretched(&self) -> Vec<Origin<'_>> {
        stretched_nodes(&self.tree, &self.workspace)
            .into_iter()
            .filter_map(|n| self.workspace.nodes()[n].top)
            .map(|h| self.workspace.origin(h))
            .collect()
    }

    /// Matches joining halves of two different instances.
    pub fn cross_matches(&self) -> Vec<(Origin<'_>, Origin<'_>)> {
        self.tree
            .nodes()
            .iter()
            .filter(|n| self.workspace.instance_of(n.top) != self.workspace.instance_of(n.bottom))
            .map(|n| (self.workspace.origin(n.top), self.workspace.origin(n.bottom)))
            .collect()
    }

    /// Derived node realizing the given half, looked up by origin.
    pub fn node_for(&self, instance: usize, node: &str, side: crate::Side) -> Option<usize> {
        let h = self.workspace.find(instance, node, side)?;
        self.tree.node_of(h)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Judgment {
    pub accepted: bool,
    pub derivations: Vec<Derivation>,
    pub workspaces_tried: u64,
    pub pairings_tried: u64,
    /// Input words no anchor mentions.
    pub unknown_tokens: Vec<String>,
}

/// Every multiset of trees whose anchors, as contiguous token runs, tile
/// the input exactly. Each multiset is returned as sorted tree names.
pub fn lexical_selection<S: AsRef<str>>(g: &Grammar, tokens: &[S]) -> Vec<Vec<String>> {
    let words = normalize_tokens(tokens.iter().map(AsRef::as_ref));
    select(g, &words)
}

fn select(g: &Grammar, words: &[String]) -> Vec<Vec<String>> {
    let lex = g.lexicon();
    let max = g.max_anchor_len();

    // Segmentations, as sorted multisets of anchor keys.
    let mut tilings: BTreeSet<Vec<AnchorKey>> = BTreeSet::new();
    let mut stack: Vec<(usize, Vec<AnchorKey>)> = alloc::vec![(0, Vec::new())];
    while let Some((pos, segs)) = stack.pop() {
        if pos == words.len() {
            let mut s = segs;
            s.sort();
            tilings.insert(s);
            continue;
        }
        for len in 1..=max.min(words.len() - pos) {
            let key = &words[pos..pos + len];
            if lex.contains_key(key) {
                let mut next = segs.clone();
                next.push(key.to_vec());
                stack.push((pos + len, next));
            }
        }
    }

    let anchors: BTreeMap<&str, Vec<AnchorKey>> = g
        .trees()
        .iter()
        .map(|t| {
            let mut keys: Vec<AnchorKey> = t
                .anchors()
                .map(|a| normalize_tokens(a.iter().map(String::as_str)))
                .collect();
            keys.sort();
            (t.name.as_str(), keys)
        })
        .collect();

    let mut covers: BTreeSet<Vec<String>> = BTreeSet::new();
    for tiling in tilings {
        let mut need: BTreeMap<AnchorKey, usize> = BTreeMap::new();
        for k in tiling {
            *need.entry(k).or_default() += 1;
        }
        cover(lex, &anchors, &mut need, &mut Vec::new(), &mut covers);
    }
    covers.into_iter().collect()
}

fn cover(
    lex: &BTreeMap<AnchorKey, BTreeSet<String>>,
    anchors: &BTreeMap<&str, Vec<AnchorKey>>,
    need: &mut BTreeMap<AnchorKey, usize>,
    chosen: &mut Vec<String>,
    out: &mut BTreeSet<Vec<String>>,
) {
    let Some(first) = need.iter().find(|(_, &c)| c > 0).map(|(k, _)| k.clone()) else {
        let mut v = chosen.clone();
        v.sort();
        out.insert(v);
        return;
    };
    for name in &lex[&first] {
        let keys = &anchors[name.as_str()];
        if !keys.iter().all(|k| need.get(k).map_or(false, |&c| c >= keys.iter().filter(|j| *j == k).count())) {
            continue;
        }
        for k in keys {
            *need.get_mut(k).unwrap() -= 1;
        }
        chosen.push(name.clone());
        cover(lex, anchors, need, chosen, out);
        chosen.pop();
        for k in keys {
            *need.get_mut(k).unwrap() += 1;
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Recognizer {
    pub max_pairings: u64,
}

impl Default for Recognizer {
    fn default() -> Self {
        Recognizer {
            max_pairings: DEFAULT_MAX_PAIRINGS,
        }
    }
}

impl Recognizer {
    pub fn with_cap(max_pairings: u64) -> Self {
        Recognizer { max_pairings }
    }

    /// Judges a token sequence. Tokens may contain spaces; they are split
    /// into words and lower-cased first.
    pub fn recognize<S: AsRef<str>>(
        &self,
        g: &Grammar,
        tokens: &[S],
    ) -> Result<Judgment, BoundExceeded> {
        let words = normalize_tokens(tokens.iter().map(AsRef::as_ref));
        let known: BTreeSet<&String> = g.lexicon().keys().flatten().collect();
        let unknown: Vec<String> = words
            .iter()
            .filter(|w| !known.contains(w))
            .cloned()
            .collect();
        let mut judgment = Judgment {
            unknown_tokens: unknown,
            ..Judgment::default()
        };
        if !judgment.unknown_tokens.is_empty() || words.is_empty() {
            return Ok(judgment);
        }

        let mut seen: BTreeSet<DerivedTree> = BTreeSet::new();
        for names in select(g, &words) {
            let mut ws = Workspace::new();
            for n in &names {
                ws.instantiate(g.tree(n).expect("selected from lexicon"));
            }
            judgment.workspaces_tried += 1;
            let budget = self.max_pairings.saturating_sub(judgment.pairings_tried);
            let solution = Solver::with_cap(budget)
                .solve(&ws)
                .map_err(|_| BoundExceeded {
                    cap: self.max_pairings,
                })?;
            judgment.pairings_tried += solution.pairings_tried;
            let ws = Arc::new(ws);
            for tree in solution.trees {
                let y = normalize_tokens(yield_of(&tree).iter().map(String::as_str));
                if y == words && !seen.contains(&tree) {
                    seen.insert(tree.clone());
                    judgment.derivations.push(Derivation {
                        tree,
                        workspace: Arc::clone(&ws),
                    });
                }
            }
        }
        judgment.derivations.sort_by(|a, b| a.tree.cmp(&b.tree));
        judgment.accepted = !judgment.derivations.is_empty();
        Ok(judgment)
    }
}

/// [`Recognizer::recognize`] with the default search cap.
pub fn recognize<S: AsRef<str>>(g: &Grammar, tokens: &[S]) -> Result<Judgment, BoundExceeded> {
    Recognizer::default().recognize(g, tokens)
}

/// Accepting derivations with their provenance.
pub fn derivation_forest<S: AsRef<str>>(
    g: &Grammar,
    tokens: &[S],
) -> Result<Vec<Derivation>, BoundExceeded> {
    recognize(g, tokens).map(|j| j.derivations)
}
