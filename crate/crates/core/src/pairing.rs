//! Bijections between top halves and bottom halves.

use alloc::vec;
use alloc::vec::Vec;

use crate::workspace::{HalfId, Workspace};

/// A total matching of every top half to a distinct bottom half. Matches
/// are kept sorted by top half.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pairing {
    matches: Vec<(HalfId, HalfId)>,
}

impl Pairing {
    pub fn new(mut matches: Vec<(HalfId, HalfId)>) -> Self {
        matches.sort();
        Pairing { matches }
    }

    pub fn matches(&self) -> &[(HalfId, HalfId)] {
        &self.matches
    }

    pub fn len(&self) -> usize {
        self.matches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matches.is_empty()
    }

    pub fn bottom_of(&self, top: HalfId) -> Option<HalfId> {
        self.matches
            .binary_search_by_key(&top, |m| m.0)
            .ok()
            .map(|i| self.matches[i].1)
    }

    /// Matches that join halves of two different instances.
    pub fn cross_instance(&self, ws: &Workspace) -> usize {
        self.matches
            .iter()
            .filter(|(t, b)| ws.instance_of(*t) != ws.instance_of(*b))
            .count()
    }

    /// True when the pairing respects category equality and feature
    /// compatibility for every match.
    pub fn is_locally_valid(&self, ws: &Workspace) -> bool {
        let tops = ws.tops().count();
        let bottoms = ws.bottoms().count();
        let mut seen = vec![false; ws.halves().len()];
        self.matches.len() == tops
            && tops == bottoms
            && self.matches.iter().all(|&(t, b)| {
                let fresh = !seen[b.index()];
                seen[b.index()] = true;
                fresh && local_match(ws, t, b)
            })
    }
}

fn local_match(ws: &Workspace, top: HalfId, bottom: HalfId) -> bool {
    use crate::quasi_tree::Side;
    ws.half(top).side == Side::Top
        && ws.half(bottom).side == Side::Bottom
        && ws.category(top) == ws.category(bottom)
        && ws.half(top).features.compatible(&ws.half(bottom).features)
}

/// Depth-first enumeration of pairings in lexicographic order of the
/// bottom sequence assigned to the sorted tops.
pub struct PairingIter<'a> {
    ws: &'a Workspace,
    tops: Vec<HalfId>,
    candidates: Vec<Vec<HalfId>>,
    cursor: Vec<usize>,
    chosen: Vec<HalfId>,
    used: Vec<bool>,
    prune: bool,
    /// Lower ends of dlinks, indexed by upper half.
    lowers: Vec<Vec<HalfId>>,
    exhausted: bool,
}

impl<'a> PairingIter<'a> {
    fn new(ws: &'a Workspace, prune: bool) -> Self {
        let tops: Vec<HalfId> = ws.tops().collect();
        let bottoms: Vec<HalfId> = ws.bottoms().collect();
        let candidates: Vec<Vec<HalfId>> = tops
            .iter()
            .map(|&t| {
                bottoms
                    .iter()
                    .copied()
                    .filter(|&b| local_match(ws, t, b))
                    .collect()
            })
            .collect();
        let mut lowers = vec![Vec::new(); ws.halves().len()];
        for &(u, l) in ws.dlinks() {
            lowers[u.index()].push(l);
        }
        let exhausted = ws.is_empty()
            || tops.len() != bottoms.len()
            || candidates.iter().any(Vec::is_empty);
        PairingIter {
            ws,
            cursor: vec![0; tops.len()],
            chosen: Vec::with_capacity(tops.len()),
            used: vec![false; ws.halves().len()],
            tops,
            candidates,
            prune,
            lowers,
            exhausted,
        }
    }

    /// Rejections that cannot change the set of derived trees: a top hung
    /// directly from the bottom it is matched with, and a leaf node that
    /// would have to dominate some half outside itself.
    fn admissible(&self, top: HalfId, bottom: HalfId) -> bool {
        if !self.prune {
            return true;
        }
        let ws = self.ws;
        if ws.half(top).parent == Some(bottom) {
            return false;
        }
        let leaf = ws.half(top).children.is_empty() && ws.half(bottom).children.is_empty();
        if leaf {
            for h in [top, bottom] {
                if self.lowers[h.index()]
                    .iter()
                    .any(|&l| l != top && l != bottom)
                {
                    return false;
                }
            }
        }
        true
    }
}

impl Iterator for PairingIter<'_> {
    type Item = Pairing;

    fn next(&mut self) -> Option<Pairing> {
        if self.exhausted {
            return None;
        }
        let n = self.tops.len();
        // On resume, the previous full assignment is still on the stack.
        if self.chosen.len() == n {
            let last = self.chosen.pop().unwrap();
            self.used[last.index()] = false;
        }
        loop {
            let depth = self.chosen.len();
            let top = self.tops[depth];
            let mut advanced = false;
            while self.cursor[depth] < self.candidates[depth].len() {
                let b = self.candidates[depth][self.cursor[depth]];
                self.cursor[depth] += 1;
                if !self.used[b.index()] && self.admissible(top, b) {
                    self.used[b.index()] = true;
                    self.chosen.push(b);
                    advanced = true;
                    break;
                }
            }
            if advanced {
                if self.chosen.len() == n {
                    let matches = self.tops.iter().copied().zip(self.chosen.iter().copied()).collect();
                    return Some(Pairing { matches });
                }
                let d = self.chosen.len();
                self.cursor[d] = 0;
            } else {
                if depth == 0 {
                    self.exhausted = true;
                    return None;
                }
                let b = self.chosen.pop().unwrap();
                self.used[b.index()] = false;
            }
        }
    }
}

/// Every bijection satisfying category equality and feature
/// compatibility, in canonical order.
pub fn enumerate_pairings(ws: &Workspace) -> PairingIter<'_> {
    PairingIter::new(ws, false)
}

/// Like [`enumerate_pairings`] but skips matches that can never yield a
/// tree passing the dominance check.
pub(crate) fn pruned_pairings(ws: &Workspace) -> PairingIter<'_> {
    PairingIter::new(ws, true)
}
