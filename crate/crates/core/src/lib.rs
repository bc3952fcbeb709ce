//! Combinatorics of the disentangling number for leaf-labeled trees.
//!
//! Two unordered lists of trees on the same leaf set are *disentangled* by a
//! leaf subset `K` when their restrictions to `K` differ. This crate provides
//! the tree machinery (restriction, rooted triples, quartets, enumeration),
//! the contingency-table encoding of tree multisets with marginal maps over
//! simplicial complexes, exact minimal-disentangling-set search, and the
//! parity-family construction that attains the lower bound
//! `3(⌊log₂ r⌋ + 1)`.

pub mod disentangle;
pub mod encoding;
pub mod error;
pub mod humphries;
pub mod tree;
pub mod verify;

pub use disentangle::{DisentangleResult, TreeMultiset};
pub use error::{Error, Result};
pub use tree::{
    LabelMap, LeafLabel, LeafSet, LeafTriple, QuartetChoice, RootedTopology, TripletChoice,
    UnrootedTopology,
};

/// `g(r) = 3(⌊log₂ r⌋ + 1)`, the rooted disentangling number for `r >= 1`.
pub fn g(r: usize) -> usize {
    assert!(r >= 1, "g(r) is defined for r >= 1");
    3 * (r.ilog2() as usize + 1)
}
