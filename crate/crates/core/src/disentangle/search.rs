use rayon::prelude::*;

use super::TreeMultiset;
use crate::error::{Error, Result};
use crate::tree::{LeafSet, Topology};

/// Size and witness of a minimum disentangling set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DisentangleResult {
    pub cardinality: usize,
    /// Lexicographically least disentangling set of that size.
    pub witness: LeafSet,
}

pub(crate) fn check_comparable<T: Topology>(
    s1: &TreeMultiset<T>,
    s2: &TreeMultiset<T>,
) -> Result<()> {
    if s1.leaves() != s2.leaves() {
        return Err(Error::MixedLeafSets);
    }
    if s1.len() != s2.len() {
        return Err(Error::LengthMismatch(s1.len(), s2.len()));
    }
    Ok(())
}

/// Restrictions of `s1` and `s2` to `k` differ. `k` must be a valid
/// restriction set.
pub(crate) fn differ_on<T: Topology>(
    k: LeafSet,
    s1: &TreeMultiset<T>,
    s2: &TreeMultiset<T>,
) -> bool {
    s1.restrict_unchecked(k) != s2.restrict_unchecked(k)
}

/// Whether `k` disentangles `s1` and `s2`, i.e. `s1|_k != s2|_k`.
pub fn disentangles<T: Topology>(
    k: LeafSet,
    s1: &TreeMultiset<T>,
    s2: &TreeMultiset<T>,
) -> Result<bool> {
    check_comparable(s1, s2)?;
    Ok(s1.restrict(k)? != s2.restrict(k)?)
}

fn search<T: Topology>(
    s1: &TreeMultiset<T>,
    s2: &TreeMultiset<T>,
    parallel: bool,
) -> Result<DisentangleResult> {
    check_comparable(s1, s2)?;
    if s1 == s2 {
        return Err(Error::IdenticalMultisets);
    }
    let leaves = s1.leaves();
    let n = leaves.len();
    for size in T::MIN_INFORMATIVE.min(n)..=n {
        let found = if parallel {
            let candidates: Vec<LeafSet> = leaves.subsets_of_size(size).collect();
            candidates
                .into_par_iter()
                .find_first(|&k| differ_on(k, s1, s2))
        } else {
            leaves.subsets_of_size(size).find(|&k| differ_on(k, s1, s2))
        };
        if let Some(witness) = found {
            return Ok(DisentangleResult {
                cardinality: size,
                witness,
            });
        }
    }
    unreachable!("distinct multisets differ on the full leaf set")
}

/// `d(s1, s2)`: the smallest `|K|` with `s1|_K != s2|_K`, with the
/// lexicographically least such `K`.
///
/// Subsets are scanned by increasing size starting at the smallest size on
/// which topologies can differ (3 rooted, 4 unrooted).
pub fn min_disentangling<T: Topology>(
    s1: &TreeMultiset<T>,
    s2: &TreeMultiset<T>,
) -> Result<DisentangleResult> {
    search(s1, s2, false)
}

/// [`min_disentangling`] evaluated on the current rayon pool. The result is
/// identical to the sequential search.
pub fn min_disentangling_par<T: Topology>(
    s1: &TreeMultiset<T>,
    s2: &TreeMultiset<T>,
) -> Result<DisentangleResult> {
    search(s1, s2, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{LeafLabel, RootedTopology, UnrootedTopology};

    fn rm(trees: &[&str]) -> TreeMultiset<RootedTopology> {
        TreeMultiset::new(
            trees
                .iter()
                .map(|s| RootedTopology::from_newick(s).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn um(trees: &[&str]) -> TreeMultiset<UnrootedTopology> {
        TreeMultiset::new(
            trees
                .iter()
                .map(|s| UnrootedTopology::from_newick(s).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn set(v: &[u32]) -> LeafSet {
        v.iter().map(|&x| LeafLabel(x)).collect()
    }

    #[test]
    fn distinct_rooted_triples() {
        let a = rm(&["((1,2),3);"]);
        let b = rm(&["((1,3),2);"]);
        let res = min_disentangling(&a, &b).unwrap();
        assert_eq!(res.cardinality, 3);
        assert_eq!(res.witness, set(&[1, 2, 3]));
        assert!(disentangles(a.leaves(), &a, &b).unwrap());
    }

    #[test]
    fn distinct_quartets() {
        let a = um(&["((1,2),3,4);"]);
        let b = um(&["((1,3),2,4);"]);
        assert_eq!(min_disentangling(&a, &b).unwrap().cardinality, 4);
        assert!(!disentangles(set(&[1, 2, 3]), &a, &b).unwrap());
    }

    #[test]
    fn witness_is_lexicographically_least() {
        // the trees differ only in where leaf 5 sits
        let a = rm(&["((((1,2),3),4),5);"]);
        let b = rm(&["((((1,2),3),5),4);"]);
        let res = min_disentangling(&a, &b).unwrap();
        assert_eq!(res.cardinality, 3);
        assert_eq!(res.witness, set(&[1, 4, 5]));
        assert_eq!(min_disentangling_par(&a, &b).unwrap(), res);
    }

    #[test]
    fn error_paths() {
        let a = rm(&["((1,2),3);"]);
        assert_eq!(min_disentangling(&a, &a), Err(Error::IdenticalMultisets));
        assert!(!disentangles(set(&[1, 2, 3]), &a, &a).unwrap());
        let b = rm(&["((1,2),4);"]);
        assert_eq!(min_disentangling(&a, &b), Err(Error::MixedLeafSets));
        let c = rm(&["((1,2),3);", "((1,2),3);"]);
        assert_eq!(min_disentangling(&a, &c), Err(Error::LengthMismatch(1, 2)));
    }
}
