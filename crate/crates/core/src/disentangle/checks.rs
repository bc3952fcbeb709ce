use itertools::Itertools;
use rayon::prelude::*;

use super::search::{check_comparable, differ_on, min_disentangling, min_disentangling_par};
use super::TreeMultiset;
use crate::error::{Error, Result};
use crate::g;
use crate::tree::{LeafLabel, LeafSet, RootedTopology, Topology, UnrootedTopology};

/// Outcome of comparing `d(s1, s2)` with the bound `g(r)` (rooted) or
/// `g(r) + 1` (unrooted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub rooted: bool,
    pub r: usize,
    pub n: usize,
    pub bound: usize,
    pub cardinality: usize,
    pub witness: LeafSet,
    /// `bound - cardinality`; negative means a counterexample.
    pub margin: i64,
}

impl BoundReport {
    pub fn holds(&self) -> bool {
        self.margin >= 0
    }
}

/// Computes `d(s1, s2)` and compares it with the disentangling bound for `r`.
pub fn check_upper_bound<T: Topology>(
    s1: &TreeMultiset<T>,
    s2: &TreeMultiset<T>,
    parallel: bool,
) -> Result<BoundReport> {
    let res = if parallel {
        min_disentangling_par(s1, s2)?
    } else {
        min_disentangling(s1, s2)?
    };
    let r = s1.len();
    let bound = g(r) + usize::from(!T::ROOTED);
    Ok(BoundReport {
        rooted: T::ROOTED,
        r,
        n: s1.leaves().len(),
        bound,
        cardinality: res.cardinality,
        witness: res.witness,
        margin: bound as i64 - res.cardinality as i64,
    })
}

/// Result of checking that rooting at a leaf never hides a disentangling set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootingReport {
    /// The unrooted multisets were equal; nothing to check.
    pub vacuous: bool,
    /// The rooted images differ. When `false` the distinction was lost by
    /// rooting at this leaf, which is allowed.
    pub rooted_distinct: bool,
    /// Number of sets `K` that disentangle the rooted images.
    pub checked: usize,
    /// Sets `K` disentangling the rooted pair whose extension `K ∪ {leaf0}`
    /// fails to disentangle the unrooted pair.
    pub violations: Vec<LeafSet>,
}

impl RootingReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Roots every member of both multisets at `leaf0` and checks, for every
/// `K` of at least two other leaves, that if `K` disentangles the rooted
/// images then `K ∪ {leaf0}` disentangles the unrooted multisets.
pub fn rooting_reduction_check(
    s1: &TreeMultiset<UnrootedTopology>,
    s2: &TreeMultiset<UnrootedTopology>,
    leaf0: LeafLabel,
) -> Result<RootingReport> {
    check_comparable(s1, s2)?;
    if !s1.leaves().contains(leaf0) {
        return Err(Error::MissingLeaf(leaf0));
    }
    if s1 == s2 {
        return Ok(RootingReport {
            vacuous: true,
            rooted_distinct: false,
            checked: 0,
            violations: Vec::new(),
        });
    }
    let root_all = |s: &TreeMultiset<UnrootedTopology>| -> Result<TreeMultiset<RootedTopology>> {
        TreeMultiset::new(
            s.members()
                .iter()
                .map(|t| t.root_at_leaf(leaf0))
                .collect::<Result<_>>()?,
        )
    };
    let r1 = root_all(s1)?;
    let r2 = root_all(s2)?;
    let mut report = RootingReport {
        vacuous: false,
        rooted_distinct: r1 != r2,
        checked: 0,
        violations: Vec::new(),
    };
    if !report.rooted_distinct {
        return Ok(report);
    }
    let rest = s1.leaves().without(leaf0);
    for size in 2..=rest.len() {
        for k in rest.subsets_of_size(size) {
            if differ_on(k, &r1, &r2) {
                report.checked += 1;
                if !differ_on(k.with(leaf0), s1, s2) {
                    report.violations.push(k);
                }
            }
        }
    }
    Ok(report)
}

/// Largest number of ordered multiset pairs an exhaustive run may visit.
pub const MAX_EXACT_PAIRS: u128 = 10_000_000;

/// `max d(S1, S2)` over all pairs of distinct `r`-multisets on `{1, ..., n}`.
#[derive(Debug, Clone)]
pub struct ExactReport<T> {
    pub n: usize,
    pub r: usize,
    pub multisets: usize,
    pub pairs: usize,
    pub max_cardinality: usize,
    pub min_cardinality: usize,
    /// First pair (in enumeration order) attaining the maximum.
    pub argmax: Option<(TreeMultiset<T>, TreeMultiset<T>)>,
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Exhaustive `max_{S1 != S2} d(S1, S2)` at fixed `n` and `r`.
pub fn exact_disentangling_number<T: Topology>(
    n: usize,
    r: usize,
    parallel: bool,
) -> Result<ExactReport<T>> {
    if r == 0 {
        return Err(Error::OutOfRange {
            what: "r",
            value: 0,
            range: ">= 1".into(),
        });
    }
    let trees = T::enumerate(n)?;
    let count = binomial(trees.len() as u128 + r as u128 - 1, r as u128);
    if count.saturating_mul(count) > MAX_EXACT_PAIRS {
        return Err(Error::Infeasible(format!(
            "{count} multisets of size {r} on {n} leaves give more than {MAX_EXACT_PAIRS} pairs"
        )));
    }
    let multisets: Vec<TreeMultiset<T>> = (0..trees.len())
        .combinations_with_replacement(r)
        .map(|idx| TreeMultiset::new(idx.into_iter().map(|i| trees[i].clone()).collect()))
        .collect::<Result<_>>()?;
    let m = multisets.len();

    // (max, argmax partner, min) over partners j > i
    let row = |i: usize| -> (usize, usize, usize) {
        let mut best = (0, usize::MAX, usize::MAX);
        for j in i + 1..m {
            let d = min_disentangling(&multisets[i], &multisets[j])
                .expect("distinct multisets")
                .cardinality;
            if d > best.0 {
                best.0 = d;
                best.1 = j;
            }
            best.2 = best.2.min(d);
        }
        best
    };
    let rows: Vec<(usize, usize, usize)> = if parallel {
        (0..m).into_par_iter().map(row).collect()
    } else {
        (0..m).map(row).collect()
    };
    let mut max_cardinality = 0;
    let mut min_cardinality = usize::MAX;
    let mut argmax = None;
    for (i, &(best, j, low)) in rows.iter().enumerate() {
        if best > max_cardinality {
            max_cardinality = best;
            argmax = Some((multisets[i].clone(), multisets[j].clone()));
        }
        min_cardinality = min_cardinality.min(low);
    }
    Ok(ExactReport {
        n,
        r,
        multisets: m,
        pairs: m * (m - 1) / 2,
        max_cardinality,
        min_cardinality: if m > 1 { min_cardinality } else { 0 },
        argmax,
    })
}

/// Rooted disentangling number restricted to `n` leaves.
pub fn exact_rd(n: usize, r: usize) -> Result<usize> {
    Ok(exact_disentangling_number::<RootedTopology>(n, r, true)?.max_cardinality)
}

/// Unrooted disentangling number restricted to `n` leaves.
pub fn exact_d(n: usize, r: usize) -> Result<usize> {
    Ok(exact_disentangling_number::<UnrootedTopology>(n, r, true)?.max_cardinality)
}
