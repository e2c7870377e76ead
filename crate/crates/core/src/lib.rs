//! Quasi-tree substitution grammars.
//!
//! A quasi-tree is a tree description whose nodes are split into a top and
//! a bottom half, with the top required to dominate the bottom in any
//! derived tree. Composition pairs every top half in a workspace with some
//! bottom half; contracting the pairs gives candidate trees, which are kept
//! when all dominance links hold.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, rendering
//! and the command-line tool live in the `qtsg` crate.
#![no_std]

extern crate alloc;

pub mod derived;
pub mod features;
pub mod grammar;
pub mod grammars;
pub mod oracle;
pub mod pairing;
pub mod quasi_tree;
pub mod recognize;
pub mod solve;
pub mod tag;
pub mod workspace;

pub use derived::{build_trees, check_dominance, stretched_nodes, yield_of, DerivedNode, DerivedTree};
pub use features::{unify, Clash, FeatureSet};
pub use grammar::{Grammar, GrammarError};
pub use pairing::{enumerate_pairings, Pairing};
pub use quasi_tree::{feats, Dlink, Edge, HalfRef, NodeKind, QuasiNode, QuasiTree, Side, Violation};
pub use recognize::{derivation_forest, lexical_selection, recognize, Derivation, Judgment, Recognizer};
pub use solve::{solve, BoundExceeded, Solution, Solver, DEFAULT_MAX_PAIRINGS};
pub use workspace::{HalfId, Workspace};
