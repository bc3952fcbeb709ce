use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::tree::{LabelMap, LeafLabel, LeafSet, Topology};

/// An unordered list of `r >= 1` topologies on one shared leaf set.
///
/// Members are kept sorted, so multiset equality is list equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeMultiset<T> {
    leaves: LeafSet,
    members: Vec<T>,
}

impl<T: Topology> TreeMultiset<T> {
    pub fn new(mut members: Vec<T>) -> Result<Self> {
        let leaves = members.first().ok_or(Error::EmptyMultiset)?.leaves();
        if members.iter().any(|t| t.leaves() != leaves) {
            return Err(Error::MixedLeafSets);
        }
        members.sort_unstable();
        Ok(TreeMultiset { leaves, members })
    }

    pub fn leaves(&self) -> LeafSet {
        self.leaves
    }

    /// `r`, the number of members counted with multiplicity.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in canonical order.
    pub fn members(&self) -> &[T] {
        &self.members
    }

    /// Member-wise restriction to `k`.
    pub fn restrict(&self, k: LeafSet) -> Result<Self> {
        if k.len() < T::MIN_RESTRICTION {
            return Err(Error::RestrictionTooSmall {
                found: k.len(),
                min: T::MIN_RESTRICTION,
            });
        }
        if !k.is_subset(self.leaves) {
            return Err(Error::NotASubset);
        }
        Ok(self.restrict_unchecked(k))
    }

    pub(crate) fn restrict_unchecked(&self, k: LeafSet) -> Self {
        let mut members: Vec<T> = self
            .members
            .iter()
            .map(|t| t.restrict_unchecked(k))
            .collect();
        members.sort_unstable();
        TreeMultiset { leaves: k, members }
    }

    /// Adds `copies` copies of `filler`.
    pub fn with_copies(&self, filler: &T, copies: usize) -> Result<Self> {
        let mut members = self.members.clone();
        members.extend(std::iter::repeat_n(filler.clone(), copies));
        TreeMultiset::new(members)
    }

    pub fn relabel(&self, f: &dyn Fn(LeafLabel) -> LeafLabel) -> Self {
        TreeMultiset::new(self.members.iter().map(|t| t.relabel(f)).collect())
            .expect("relabeling keeps a shared leaf set")
    }

    /// `r` uniformly random topologies on `leaves`.
    pub fn random<R: Rng + ?Sized>(leaves: LeafSet, r: usize, rng: &mut R) -> Self {
        TreeMultiset::new((0..r).map(|_| T::random_on(leaves, rng)).collect())
            .expect("r >= 1 members on one leaf set")
    }

    /// Parses the line format: one Newick tree per line; blank lines and
    /// lines starting with `#` are skipped.
    pub fn parse(text: &str, labels: &mut LabelMap) -> Result<Self> {
        let lines: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        TreeMultiset::new(T::parse_many(&lines, labels)?)
    }

    /// One canonical Newick line per member.
    pub fn to_text(&self, labels: &LabelMap) -> String {
        self.members
            .iter()
            .map(|t| t.to_newick(labels) + "\n")
            .collect()
    }

    pub fn to_newick_lines(&self, labels: &LabelMap) -> Vec<String> {
        self.members.iter().map(|t| t.to_newick(labels)).collect()
    }
}

impl<T: fmt::Debug> fmt::Debug for TreeMultiset<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.members.iter()).finish()
    }
}

/// `S|_K`: every member restricted to `k`.
pub fn restrict_multiset<T: Topology>(s: &TreeMultiset<T>, k: LeafSet) -> Result<TreeMultiset<T>> {
    s.restrict(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{RootedTopology, UnrootedTopology};

    fn r(s: &str) -> RootedTopology {
        RootedTopology::from_newick(s).unwrap()
    }

    #[test]
    fn order_does_not_matter() {
        let a = TreeMultiset::new(vec![r("((1,2),3);"), r("((1,3),2);")]).unwrap();
        let b = TreeMultiset::new(vec![r("((1,3),2);"), r("((2,1),3);")]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn rejects_mixed_and_empty() {
        assert_eq!(
            TreeMultiset::new(vec![r("((1,2),3);"), r("((1,2),4);")]),
            Err(Error::MixedLeafSets)
        );
        assert_eq!(
            TreeMultiset::<RootedTopology>::new(vec![]),
            Err(Error::EmptyMultiset)
        );
    }

    #[test]
    fn single_member_restriction_matches_tree_restriction() {
        let t = r("(((1,2),3),4);");
        let k: LeafSet = [1, 3, 4].into_iter().map(LeafLabel).collect();
        let s = TreeMultiset::new(vec![t.clone()]).unwrap();
        assert_eq!(s.restrict(k).unwrap().members(), &[t.restrict(k).unwrap()]);
        assert_eq!(s.restrict(s.leaves()).unwrap(), s);
    }

    #[test]
    fn parse_line_format() {
        let text = "# two trees\n((a,b),c);\n\n(a,(b,c));\n";
        let mut labels = LabelMap::new();
        let s = TreeMultiset::<RootedTopology>::parse(text, &mut labels).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.to_text(&labels), "((a,b),c);\n(a,(b,c));\n");
        assert!(TreeMultiset::<RootedTopology>::parse(
            "((a,b),c);\n((a,b),d);",
            &mut LabelMap::new()
        )
        .is_err());
    }

    #[test]
    fn unrooted_restriction_floor() {
        let s = TreeMultiset::new(vec![UnrootedTopology::from_newick("((1,2),3,4);").unwrap()])
            .unwrap();
        let k: LeafSet = [1, 2].into_iter().map(LeafLabel).collect();
        assert_eq!(
            s.restrict(k),
            Err(Error::RestrictionTooSmall { found: 2, min: 3 })
        );
    }
}
