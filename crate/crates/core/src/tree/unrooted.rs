use std::fmt;

use super::newick;
use super::{LabelMap, LeafLabel, LeafSet, QuartetChoice, RootedTopology};
use crate::error::{Error, Result};

/// A leaf-labeled trivalent unrooted tree with at least three leaves.
///
/// Stored as the rooted tree obtained by cutting the pendant edge of the
/// smallest leaf (the handle): `rest` is a rooted binary tree on the other
/// leaves, and each of its non-root clusters is one side of a nontrivial
/// split. The three-leaf star is the handle plus a cherry.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnrootedTopology {
    handle: LeafLabel,
    rest: RootedTopology,
}

impl UnrootedTopology {
    /// Canonical tree from split sides. Each side may be given in either
    /// orientation; trivial splits are dropped.
    pub(crate) fn from_splits(leaves: LeafSet, sides: impl IntoIterator<Item = LeafSet>) -> Self {
        debug_assert!(leaves.len() >= 3);
        let handle = leaves.min().expect("nonempty");
        let rest_leaves = leaves.without(handle);
        let mut clusters: Vec<LeafSet> = sides
            .into_iter()
            .map(|a| {
                let a = a.intersection(leaves);
                if a.contains(handle) {
                    leaves.difference(a)
                } else {
                    a
                }
            })
            .filter(|a| a.len() >= 2 && a.len() <= leaves.len() - 2)
            .collect();
        clusters.push(rest_leaves);
        UnrootedTopology {
            handle,
            rest: RootedTopology::from_clusters_unchecked(rest_leaves, clusters),
        }
    }

    pub fn star(a: LeafLabel, b: LeafLabel, c: LeafLabel) -> Option<Self> {
        let leaves: LeafSet = [a, b, c].into_iter().collect();
        (leaves.len() == 3).then(|| UnrootedTopology::from_splits(leaves, []))
    }

    /// Smallest leaf; the tree is stored rooted at its pendant edge.
    pub fn handle(&self) -> LeafLabel {
        self.handle
    }

    /// The rooted tree on all leaves but the handle.
    pub fn rooted_rest(&self) -> &RootedTopology {
        &self.rest
    }

    pub fn leaves(&self) -> LeafSet {
        self.rest.leaves().with(self.handle)
    }

    pub fn leaf_count(&self) -> usize {
        self.rest.leaf_count() + 1
    }

    /// One side (the side without the handle) of every nontrivial split.
    pub fn splits(&self) -> impl Iterator<Item = LeafSet> + '_ {
        let root = self.rest.leaves();
        self.rest
            .clusters()
            .iter()
            .copied()
            .filter(move |&c| c != root)
    }

    /// The induced trivalent tree on `k`, `|k| >= 3`.
    pub fn restrict(&self, k: LeafSet) -> Result<Self> {
        if k.len() < 3 {
            return Err(Error::RestrictionTooSmall {
                found: k.len(),
                min: 3,
            });
        }
        if !k.is_subset(self.leaves()) {
            return Err(Error::NotASubset);
        }
        Ok(self.restrict_unchecked(k))
    }

    pub(crate) fn restrict_unchecked(&self, k: LeafSet) -> Self {
        UnrootedTopology::from_splits(k, self.splits())
    }

    /// The quartet displayed on the 4-set `s`.
    pub fn quartet(&self, s: LeafSet) -> Result<QuartetChoice> {
        if s.len() != 4 {
            return Err(Error::RestrictionTooSmall {
                found: s.len(),
                min: 4,
            });
        }
        if !s.is_subset(self.leaves()) {
            return Err(Error::NotASubset);
        }
        let side = self
            .splits()
            .map(|a| a.intersection(s))
            .find(|a| a.len() == 2)
            .expect("a trivalent tree resolves every quartet");
        Ok(QuartetChoice::from_sides(side, s.difference(side)).expect("2|2 split"))
    }

    /// Deletes `leaf0` and roots the remaining tree at its former neighbour.
    pub fn root_at_leaf(&self, leaf0: LeafLabel) -> Result<RootedTopology> {
        let leaves = self.leaves();
        if !leaves.contains(leaf0) {
            return Err(Error::MissingLeaf(leaf0));
        }
        let remaining = leaves.without(leaf0);
        let mut clusters: Vec<LeafSet> = self
            .splits()
            .map(|a| {
                if a.contains(leaf0) {
                    leaves.difference(a)
                } else {
                    a
                }
            })
            .filter(|a| a.len() >= 2)
            .collect();
        clusters.push(remaining);
        Ok(RootedTopology::from_clusters_unchecked(remaining, clusters))
    }

    /// Attaches `leaf0` above the root of `t`; inverse of [`Self::root_at_leaf`].
    pub fn unroot(t: &RootedTopology, leaf0: LeafLabel) -> Result<Self> {
        if t.leaves().contains(leaf0) {
            return Err(Error::LeafAlreadyPresent(leaf0));
        }
        if t.leaf_count() < 2 {
            return Err(Error::TooFewLeaves {
                found: t.leaf_count() + 1,
                min: 3,
            });
        }
        Ok(UnrootedTopology::from_splits(
            t.leaves().with(leaf0),
            t.clusters().iter().copied(),
        ))
    }

    pub fn relabel(&self, f: impl Fn(LeafLabel) -> LeafLabel) -> Self {
        let map = |s: LeafSet| s.iter().map(&f).collect::<LeafSet>();
        UnrootedTopology::from_splits(map(self.leaves()), self.splits().map(map))
    }

    /// Parses unrooted Newick text: the top node has three children, every
    /// other internal node two.
    pub fn parse(text: &str, labels: &mut LabelMap) -> Result<Self> {
        let node = newick::parse_tree(text)?;
        let shape = newick::intern(std::slice::from_ref(&node), labels)?
            .pop()
            .expect("one tree");
        UnrootedTopology::from_shape(&shape)
    }

    pub fn from_newick(text: &str) -> Result<Self> {
        UnrootedTopology::parse(text, &mut LabelMap::numeric())
    }

    pub(crate) fn from_shape(shape: &newick::Shape) -> Result<Self> {
        let n = shape.leaves().len();
        if n < 3 {
            return Err(Error::TooFewLeaves { found: n, min: 3 });
        }
        newick::check_arity(shape, 3)?;
        let mut clusters = Vec::new();
        newick::clusters(shape, &mut clusters);
        Ok(UnrootedTopology::from_splits(shape.leaves(), clusters))
    }

    /// Canonical Newick text: `(handle,left,right);` where `left` and `right`
    /// are the two subtrees of the rooted rest.
    pub fn to_newick(&self, labels: &LabelMap) -> String {
        let (a, b) = self
            .rest
            .children(self.rest.leaves())
            .expect("rest has at least two leaves");
        let mut out = String::from("(");
        out.push_str(&labels.display(self.handle));
        out.push(',');
        self.rest.write_subtree(a, labels, &mut out);
        out.push(',');
        self.rest.write_subtree(b, labels, &mut out);
        out.push_str(");");
        out
    }
}

impl fmt::Display for UnrootedTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_newick(&LabelMap::numeric()))
    }
}

impl fmt::Debug for UnrootedTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Unrooted({self})")
    }
}
