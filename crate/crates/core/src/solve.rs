//! Exhaustive composition: pair, contract, check dominance, deduplicate.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::derived::{build_trees, check_dominance, DerivedTree};
use crate::pairing::pruned_pairings;
use crate::workspace::Workspace;

pub const DEFAULT_MAX_PAIRINGS: u64 = 10_000_000;

/// The search visited more complete pairings than allowed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundExceeded {
    pub cap: u64,
}

impl fmt::Display for BoundExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "search bound exceeded ({} pairings)", self.cap)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Solution {
    /// Distinct derived trees in canonical order.
    pub trees: Vec<DerivedTree>,
    pub pairings_tried: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct Solver {
    pub max_pairings: u64,
}

impl Default for Solver {
    fn default() -> Self {
        Solver {
            max_pairings: DEFAULT_MAX_PAIRINGS,
        }
    }
}

impl Solver {
    pub fn with_cap(max_pairings: u64) -> Self {
        Solver { max_pairings }
    }

    /// Every distinct derived tree of the workspace.
    ///
    /// When several pairings produce the same tree, the kept tree realizes
    /// the pairing with the fewest cross-instance matches, ties going to
    /// the one enumerated first.
    pub fn solve(&self, ws: &Workspace) -> Result<Solution, BoundExceeded> {
        let mut found: BTreeSet<DerivedTree> = BTreeSet::new();
        let mut tried = 0u64;
        // Each parentless top becomes a root; a tree has exactly one.
        if ws.tops().filter(|&t| ws.half(t).parent.is_none()).count() != 1 {
            return Ok(Solution::default());
        }
        for pairing in pruned_pairings(ws) {
            tried += 1;
            if tried > self.max_pairings {
                return Err(BoundExceeded {
                    cap: self.max_pairings,
                });
            }
            let cost = pairing.cross_instance(ws);
            for tree in build_trees(ws, &pairing) {
                if !check_dominance(&tree, ws) {
                    continue;
                }
                match found.get(&tree) {
                    Some(old) if old.pairing().cross_instance(ws) <= cost => {}
                    Some(_) => {
                        found.replace(tree);
                    }
                    None => {
                        found.insert(tree);
                    }
                }
            }
        }
        Ok(Solution {
            trees: found.into_iter().collect(),
            pairings_tried: tried,
        })
    }
}

/// Unbounded [`Solver::solve`].
pub fn solve(ws: &Workspace) -> Vec<DerivedTree> {
    Solver::with_cap(u64::MAX)
        .solve(ws)
        .map(|s| s.trees)
        .unwrap_or_default()
}
