//! Leaf-labeled trees: parsing, canonical form, restriction, rooted triples,
//! quartets, enumeration and the rooted/unrooted correspondence.

mod choice;
mod enumerate;
mod labels;
mod leaves;
pub(crate) mod newick;
mod rooted;
mod unrooted;

pub use choice::{LeafTriple, QuartetChoice, TripletChoice};
pub use enumerate::{
    double_factorial_odd, enumerate_rooted, enumerate_unrooted, random_rooted, random_rooted_on,
    random_unrooted_on, rooted_count, unrooted_count, RootedEnumerator, MAX_ENUMERATE_ROOTED,
    MAX_ENUMERATE_UNROOTED,
};
pub use labels::LabelMap;
pub use leaves::{Combinations, LeafLabel, LeafSet, MAX_LEAVES};
pub use rooted::RootedTopology;
pub use unrooted::UnrootedTopology;

use crate::error::Result;

/// Which kind of topology a Newick text describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeMode {
    Rooted,
    Unrooted,
}

/// Either kind of topology.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Topo {
    Rooted(RootedTopology),
    Unrooted(UnrootedTopology),
}

impl Topo {
    pub fn to_newick(&self, labels: &LabelMap) -> String {
        match self {
            Topo::Rooted(t) => t.to_newick(labels),
            Topo::Unrooted(t) => t.to_newick(labels),
        }
    }
}

/// Parses `text` as a rooted or unrooted topology, interning labels into `labels`.
pub fn parse_newick(text: &str, mode: TreeMode, labels: &mut LabelMap) -> Result<Topo> {
    Ok(match mode {
        TreeMode::Rooted => Topo::Rooted(RootedTopology::parse(text, labels)?),
        TreeMode::Unrooted => Topo::Unrooted(UnrootedTopology::parse(text, labels)?),
    })
}

/// Canonical Newick text of a topology.
pub fn emit_newick(t: &Topo, labels: &LabelMap) -> String {
    t.to_newick(labels)
}

/// Operations shared by rooted and unrooted topologies.
pub trait Topology:
    Clone + Ord + Eq + std::hash::Hash + std::fmt::Debug + std::fmt::Display + Send + Sync
{
    /// `true` for rooted binary trees.
    const ROOTED: bool;
    /// Smallest leaf count a restriction may have.
    const MIN_RESTRICTION: usize;
    /// Smallest leaf count on which two topologies can differ.
    const MIN_INFORMATIVE: usize;

    fn leaves(&self) -> LeafSet;
    fn restrict(&self, k: LeafSet) -> Result<Self>;
    /// Restriction without precondition checks.
    fn restrict_unchecked(&self, k: LeafSet) -> Self;
    fn relabel(&self, f: &dyn Fn(LeafLabel) -> LeafLabel) -> Self;
    fn to_newick(&self, labels: &LabelMap) -> String;
    fn parse(text: &str, labels: &mut LabelMap) -> Result<Self>;
    /// Parses several trees whose labels are interned as one batch.
    fn parse_many(texts: &[&str], labels: &mut LabelMap) -> Result<Vec<Self>>;
    /// Uniformly random topology on `leaves`.
    fn random_on<R: rand::Rng + ?Sized>(leaves: LeafSet, rng: &mut R) -> Self;
    /// Every topology on `{1, ..., n}`.
    fn enumerate(n: usize) -> Result<Vec<Self>>;
}

impl Topology for RootedTopology {
    const ROOTED: bool = true;
    const MIN_RESTRICTION: usize = 1;
    const MIN_INFORMATIVE: usize = 3;

    fn leaves(&self) -> LeafSet {
        RootedTopology::leaves(self)
    }
    fn restrict(&self, k: LeafSet) -> Result<Self> {
        RootedTopology::restrict(self, k)
    }
    fn restrict_unchecked(&self, k: LeafSet) -> Self {
        RootedTopology::restrict_unchecked(self, k)
    }
    fn relabel(&self, f: &dyn Fn(LeafLabel) -> LeafLabel) -> Self {
        RootedTopology::relabel(self, f)
    }
    fn to_newick(&self, labels: &LabelMap) -> String {
        RootedTopology::to_newick(self, labels)
    }
    fn parse(text: &str, labels: &mut LabelMap) -> Result<Self> {
        RootedTopology::parse(text, labels)
    }
    fn parse_many(texts: &[&str], labels: &mut LabelMap) -> Result<Vec<Self>> {
        newick::parse_many(texts, labels, RootedTopology::from_shape)
    }
    fn random_on<R: rand::Rng + ?Sized>(leaves: LeafSet, rng: &mut R) -> Self {
        random_rooted_on(leaves, rng)
    }
    fn enumerate(n: usize) -> Result<Vec<Self>> {
        Ok(enumerate_rooted(n)?.collect())
    }
}

impl Topology for UnrootedTopology {
    const ROOTED: bool = false;
    const MIN_RESTRICTION: usize = 3;
    const MIN_INFORMATIVE: usize = 4;

    fn leaves(&self) -> LeafSet {
        UnrootedTopology::leaves(self)
    }
    fn restrict(&self, k: LeafSet) -> Result<Self> {
        UnrootedTopology::restrict(self, k)
    }
    fn restrict_unchecked(&self, k: LeafSet) -> Self {
        UnrootedTopology::restrict_unchecked(self, k)
    }
    fn relabel(&self, f: &dyn Fn(LeafLabel) -> LeafLabel) -> Self {
        UnrootedTopology::relabel(self, f)
    }
    fn to_newick(&self, labels: &LabelMap) -> String {
        UnrootedTopology::to_newick(self, labels)
    }
    fn parse(text: &str, labels: &mut LabelMap) -> Result<Self> {
        UnrootedTopology::parse(text, labels)
    }
    fn parse_many(texts: &[&str], labels: &mut LabelMap) -> Result<Vec<Self>> {
        newick::parse_many(texts, labels, UnrootedTopology::from_shape)
    }
    fn random_on<R: rand::Rng + ?Sized>(leaves: LeafSet, rng: &mut R) -> Self {
        random_unrooted_on(leaves, rng)
    }
    fn enumerate(n: usize) -> Result<Vec<Self>> {
        Ok(enumerate_unrooted(n)?.collect())
    }
}
