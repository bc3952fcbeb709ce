//! Parity families of gadget trees attaining the lower bound on the rooted
//! disentangling number.
//!
//! Gadget `i` lives on leaves `a_i, b_i, c_i` (ids `3(i-1)`, `3(i-1)+1`,
//! `3(i-1)+2`) and is either `a_i|b_i c_i` (bit 0) or `b_i|a_i c_i` (bit 1).
//! For a base tree on `{1, ..., k}` and a bit vector `ε`, `T_ε` replaces leaf
//! `i` of the base by gadget `i` with bit `ε_i`. The odd and even families
//! collect the `T_ε` by parity of `Σ ε_i`; they agree on every leaf subset
//! that omits at least one leaf, since dropping any gadget leaf makes both
//! gadget variants collapse to the same cherry.

use crate::disentangle::TreeMultiset;
use crate::error::{Error, Result};
use crate::tree::{LabelMap, LeafLabel, LeafSet, RootedTopology, Topology, TripletChoice};

/// Largest supported `k` (3k leaf ids must fit in a leaf set, and the
/// families have `2^(k-1)` members each).
pub const MAX_K: usize = 16;

pub fn a(i: usize) -> LeafLabel {
    LeafLabel(3 * (i as u32 - 1))
}

pub fn b(i: usize) -> LeafLabel {
    LeafLabel(3 * (i as u32 - 1) + 1)
}

pub fn c(i: usize) -> LeafLabel {
    LeafLabel(3 * (i as u32 - 1) + 2)
}

/// `{a_i, b_i, c_i}`.
pub fn gadget_leaves(i: usize) -> LeafSet {
    [a(i), b(i), c(i)].into_iter().collect()
}

/// All `3k` gadget leaves.
pub fn family_leaves(k: usize) -> LeafSet {
    (1..=k).fold(LeafSet::EMPTY, |acc, i| acc.union(gadget_leaves(i)))
}

/// Names `a1, b1, c1, a2, ...` for the gadget leaf ids.
pub fn label_map(k: usize) -> LabelMap {
    let mut labels = LabelMap::new();
    for i in 1..=k {
        for (prefix, id) in [("a", a(i)), ("b", b(i)), ("c", c(i))] {
            labels
                .insert(&format!("{prefix}{i}"), id)
                .expect("fresh ids");
        }
    }
    labels
}

/// Which of the two rooted triples sits on gadget `index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GadgetChoice {
    pub index: usize,
    pub bit: bool,
}

impl GadgetChoice {
    pub fn triple(self) -> TripletChoice {
        let i = self.index;
        if self.bit {
            TripletChoice::new(b(i), a(i), c(i))
        } else {
            TripletChoice::new(a(i), b(i), c(i))
        }
        .expect("distinct gadget leaves")
    }

    pub fn tree(self) -> RootedTopology {
        let (x, y) = self.triple().cherry();
        RootedTopology::from_clusters(
            gadget_leaves(self.index),
            vec![gadget_leaves(self.index), LeafSet::singleton(x).with(y)],
        )
        .expect("valid triple")
    }
}

/// `(((1,2),3),...,k)`, or the single leaf `1` when `k = 1`.
pub fn caterpillar(k: usize) -> RootedTopology {
    assert!(k >= 1);
    let clusters = (2..=k as u32).map(|j| LeafSet::range(1, j)).collect();
    RootedTopology::from_clusters(LeafSet::range(1, k as u32), clusters).expect("caterpillar")
}

fn check_k(k: usize) -> Result<()> {
    if (1..=MAX_K).contains(&k) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            what: "k",
            value: k as u64,
            range: format!("1..={MAX_K}"),
        })
    }
}

fn check_base(base: &RootedTopology, k: usize) -> Result<()> {
    check_k(k)?;
    if base.leaves() != LeafSet::range(1, k as u32) {
        return Err(Error::MixedLeafSets);
    }
    Ok(())
}

/// `T_ε`: the base tree with leaf `i` replaced by gadget `i` carrying `eps[i-1]`.
pub fn build_tree_epsilon(base: &RootedTopology, eps: &[bool]) -> Result<RootedTopology> {
    let k = base.leaf_count();
    check_base(base, k)?;
    if eps.len() != k {
        return Err(Error::OutOfRange {
            what: "epsilon length",
            value: eps.len() as u64,
            range: format!("exactly {k}"),
        });
    }
    let expand = |set: LeafSet| {
        set.iter()
            .fold(LeafSet::EMPTY, |acc, i| acc.union(gadget_leaves(i.index())))
    };
    let mut clusters: Vec<LeafSet> = base.clusters().iter().map(|&cl| expand(cl)).collect();
    for (i, &bit) in (1..=k).zip(eps) {
        let (x, y) = GadgetChoice { index: i, bit }.triple().cherry();
        clusters.push(gadget_leaves(i));
        clusters.push(LeafSet::singleton(x).with(y));
    }
    RootedTopology::from_clusters(family_leaves(k), clusters)
}

/// The odd- and even-parity families for one base tree.
#[derive(Debug, Clone)]
pub struct FamilyPair {
    pub k: usize,
    pub base: RootedTopology,
    pub odd: TreeMultiset<RootedTopology>,
    pub even: TreeMultiset<RootedTopology>,
}

impl FamilyPair {
    pub fn leaves(&self) -> LeafSet {
        family_leaves(self.k)
    }

    /// `2^(k-1)`, the size of each family.
    pub fn family_size(&self) -> usize {
        1 << (self.k - 1)
    }
}

/// `S_odd = {T_ε : Σ ε_i odd}` and `S_even = {T_ε : Σ ε_i even}`.
pub fn build_family_pair(k: usize, base: &RootedTopology) -> Result<FamilyPair> {
    check_base(base, k)?;
    let mut odd = Vec::with_capacity(1 << (k - 1));
    let mut even = Vec::with_capacity(1 << (k - 1));
    for mask in 0u32..(1 << k) {
        let eps: Vec<bool> = (0..k).map(|i| mask >> i & 1 == 1).collect();
        let t = build_tree_epsilon(base, &eps)?;
        if mask.count_ones() % 2 == 1 {
            odd.push(t);
        } else {
            even.push(t);
        }
    }
    Ok(FamilyPair {
        k,
        base: base.clone(),
        odd: TreeMultiset::new(odd)?,
        even: TreeMultiset::new(even)?,
    })
}

/// Family pair on the caterpillar base.
pub fn default_family_pair(k: usize) -> Result<FamilyPair> {
    check_k(k)?;
    build_family_pair(k, &caterpillar(k))
}

/// `T_ε` for `ε = 0`, the default padding tree.
pub fn default_filler(base: &RootedTopology) -> Result<RootedTopology> {
    build_tree_epsilon(base, &vec![false; base.leaf_count()])
}

/// Extends both families to `r` members with `r - 2^(k-1)` copies of
/// `filler` (default [`default_filler`]). Requires `2^(k-1) <= r < 2^k`.
pub fn pad_family_pair(
    pair: &FamilyPair,
    r: usize,
    filler: Option<&RootedTopology>,
) -> Result<(TreeMultiset<RootedTopology>, TreeMultiset<RootedTopology>)> {
    let lo = pair.family_size();
    if !(lo..2 * lo).contains(&r) {
        return Err(Error::OutOfRange {
            what: "r",
            value: r as u64,
            range: format!("{lo}..{}", 2 * lo),
        });
    }
    let default;
    let filler = match filler {
        Some(f) => f,
        None => {
            default = default_filler(&pair.base)?;
            &default
        }
    };
    if filler.leaves() != pair.leaves() {
        return Err(Error::MixedLeafSets);
    }
    let copies = r - lo;
    Ok((
        pair.odd.with_copies(filler, copies)?,
        pair.even.with_copies(filler, copies)?,
    ))
}

/// `k` such that `2^(k-1) <= r < 2^k`.
pub fn k_for_r(r: usize) -> usize {
    assert!(r >= 1);
    r.ilog2() as usize + 1
}

/// Whether `s1|_K = s2|_K` for every `K` of size `m`.
pub fn verify_entangled<T: Topology>(
    s1: &TreeMultiset<T>,
    s2: &TreeMultiset<T>,
    m: usize,
) -> Result<bool> {
    if s1.leaves() != s2.leaves() {
        return Err(Error::MixedLeafSets);
    }
    let n = s1.leaves().len();
    if m > n {
        return Err(Error::OutOfRange {
            what: "m",
            value: m as u64,
            range: format!("..={n}"),
        });
    }
    if m < T::MIN_RESTRICTION {
        return Err(Error::RestrictionTooSmall {
            found: m,
            min: T::MIN_RESTRICTION,
        });
    }
    Ok(s1
        .leaves()
        .subsets_of_size(m)
        .all(|k| s1.restrict_unchecked(k) == s2.restrict_unchecked(k)))
}
