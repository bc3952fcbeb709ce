//! Batch checks behind the `verify` command: exhaustive single-tree
//! separation, the parity families, seeded random bound and rooting checks,
//! the marginal/restriction bridge, and small kernel-norm instances.
//!
//! Random suites draw every pair from one seeded generator before any
//! checking starts, so results do not depend on the thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::disentangle::{
    check_upper_bound, disentangles, exact_disentangling_number, rooting_reduction_check,
    BoundReport, TreeMultiset,
};
use crate::encoding::{
    encode_multiset, marginals_equal, min_kernel_one_norm, SmallComplexInstance, TripleComplex,
};
use crate::error::{Error, Result};
use crate::g;
use crate::humphries::{self, FamilyPair};
use crate::tree::{LeafLabel, LeafSet, RootedTopology, Topology, UnrootedTopology};

/// A pair of multisets that broke a check.
pub type Counterexample<T> = (TreeMultiset<T>, TreeMultiset<T>);

/// Random multiset pair with `s1 != s2`.
pub fn random_distinct_pair<T: Topology, R: Rng + ?Sized>(
    leaves: LeafSet,
    r: usize,
    rng: &mut R,
) -> Counterexample<T> {
    let s1 = TreeMultiset::<T>::random(leaves, r, rng);
    loop {
        let s2 = TreeMultiset::<T>::random(leaves, r, rng);
        if s2 != s1 {
            return (s1, s2);
        }
    }
}

fn nonempty(what: &'static str, values: &[usize]) -> Result<()> {
    if values.is_empty() || values.contains(&0) {
        return Err(Error::OutOfRange {
            what,
            value: 0,
            range: "non-empty list of positive values".into(),
        });
    }
    Ok(())
}

/// `(n, r, s1, s2)` for each trial; `n` and `r` drawn uniformly from the lists.
fn draw_pairs<T: Topology>(
    ns: &[usize],
    rs: &[usize],
    trials: usize,
    seed: u64,
    leaves_for: impl Fn(usize) -> LeafSet,
) -> Vec<(usize, usize, Counterexample<T>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            let n = ns[rng.gen_range(0..ns.len())];
            let r = rs[rng.gen_range(0..rs.len())];
            let pair = random_distinct_pair::<T, _>(leaves_for(n), r, &mut rng);
            (n, r, pair)
        })
        .collect()
}

/// All pairs of distinct single trees on `n` leaves.
#[derive(Debug, Clone)]
pub struct SingleTreeOutcome<T> {
    pub n: usize,
    pub trees: usize,
    pub pairs: usize,
    /// 3 for rooted trees, 4 for unrooted ones.
    pub expected: usize,
    pub min_cardinality: usize,
    pub max_cardinality: usize,
    pub counterexample: Option<Counterexample<T>>,
}

impl<T> SingleTreeOutcome<T> {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Every pair of distinct trees on `{1, ..., n}` has minimum disentangling
/// set size exactly `T::MIN_INFORMATIVE`.
pub fn single_tree_suite<T: Topology>(n: usize, parallel: bool) -> Result<SingleTreeOutcome<T>> {
    let rep = exact_disentangling_number::<T>(n, 1, parallel)?;
    let expected = T::MIN_INFORMATIVE;
    let ok = rep.pairs == 0 || (rep.min_cardinality == expected && rep.max_cardinality == expected);
    Ok(SingleTreeOutcome {
        n,
        trees: rep.multisets,
        pairs: rep.pairs,
        expected,
        min_cardinality: rep.min_cardinality,
        max_cardinality: rep.max_cardinality,
        counterexample: if ok { None } else { rep.argmax },
    })
}

/// One padded family pair.
#[derive(Debug, Clone)]
pub struct HumphriesCase {
    pub r: usize,
    /// Restrictions agree on every `(3k - 1)`-subset.
    pub entangled_below: bool,
    /// The full leaf set disentangles the pair.
    pub differ_on_all: bool,
    pub bound: usize,
}

#[derive(Debug, Clone)]
pub struct HumphriesOutcome {
    pub k: usize,
    pub n: usize,
    pub cases: Vec<HumphriesCase>,
    pub counterexample: Option<Counterexample<RootedTopology>>,
}

impl HumphriesCase {
    /// Minimum disentangling set size is exactly `3k = g(r)`.
    pub fn passed(&self, k: usize) -> bool {
        self.entangled_below && self.differ_on_all && self.bound == 3 * k
    }
}

impl HumphriesOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    /// `3k`, implied by entanglement below it and a difference on all leaves.
    pub fn cardinality(&self) -> usize {
        3 * self.k
    }
}

/// Checks the family pair on `base` padded to every `r` with
/// `2^(k-1) <= r < 2^k`.
pub fn humphries_suite(k: usize, base: Option<&RootedTopology>) -> Result<HumphriesOutcome> {
    let pair: FamilyPair = match base {
        Some(b) => humphries::build_family_pair(k, b)?,
        None => humphries::default_family_pair(k)?,
    };
    let mut cases = Vec::new();
    let mut counterexample = None;
    for r in pair.family_size()..2 * pair.family_size() {
        let (odd, even) = humphries::pad_family_pair(&pair, r, None)?;
        let case = HumphriesCase {
            r,
            entangled_below: 3 * k - 1 < odd.leaves().len()
                && humphries::verify_entangled(&odd, &even, 3 * k - 1)?,
            differ_on_all: disentangles(pair.leaves(), &odd, &even)?,
            bound: g(r),
        };
        if !case.passed(k) && counterexample.is_none() {
            counterexample = Some((odd, even));
        }
        cases.push(case);
    }
    Ok(HumphriesOutcome {
        k,
        n: pair.leaves().len(),
        cases,
        counterexample,
    })
}

#[derive(Debug, Clone)]
pub struct BoundsOutcome<T> {
    pub rooted: bool,
    pub trials: usize,
    /// Largest `cardinality - g(r)` seen; at most 0 (rooted) or 1 (unrooted).
    pub max_excess: i64,
    pub max_cardinality: usize,
    pub violations: usize,
    pub counterexample: Option<(BoundReport, Counterexample<T>)>,
}

impl<T> BoundsOutcome<T> {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// `d(S1, S2) <= g(r) + slack` (rooted) or `g(r) + 1 + slack` (unrooted)
/// on `trials` seeded random pairs on `{1, ..., n}`. A negative `slack`
/// tests a stronger claim than the proven bound and is expected to fail.
pub fn bounds_suite<T: Topology>(
    ns: &[usize],
    rs: &[usize],
    trials: usize,
    seed: u64,
    slack: i64,
    parallel: bool,
) -> Result<BoundsOutcome<T>> {
    nonempty("n", ns)?;
    nonempty("r", rs)?;
    let pairs = draw_pairs::<T>(ns, rs, trials, seed, |n| LeafSet::range(1, n as u32));
    let check =
        |(_, _, (s1, s2)): &(usize, usize, Counterexample<T>)| check_upper_bound(s1, s2, false);
    let reports: Vec<BoundReport> = if parallel {
        pairs.par_iter().map(check).collect::<Result<_>>()?
    } else {
        pairs.iter().map(check).collect::<Result<_>>()?
    };
    let mut out = BoundsOutcome {
        rooted: T::ROOTED,
        trials,
        max_excess: i64::MIN,
        max_cardinality: 0,
        violations: 0,
        counterexample: None,
    };
    for (rep, (_, _, pair)) in reports.into_iter().zip(pairs) {
        out.max_excess = out.max_excess.max(rep.cardinality as i64 - g(rep.r) as i64);
        out.max_cardinality = out.max_cardinality.max(rep.cardinality);
        if rep.margin + slack < 0 {
            out.violations += 1;
            if out.counterexample.is_none() {
                out.counterexample = Some((rep, pair));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct RootingOutcome {
    pub trials: usize,
    /// Pairs whose images rooted at leaf 0 still differ.
    pub rooted_distinct: usize,
    /// Disentangling sets of rooted images that were extended and checked.
    pub sets_checked: usize,
    pub violations: usize,
    pub counterexample: Option<(Vec<LeafSet>, Counterexample<UnrootedTopology>)>,
}

impl RootingOutcome {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Seeded random unrooted pairs on `{0, ..., n-1}`: whenever `K`
/// disentangles the images rooted at leaf 0, `K ∪ {0}` disentangles the
/// unrooted pair.
pub fn rooting_suite(
    ns: &[usize],
    rs: &[usize],
    trials: usize,
    seed: u64,
    parallel: bool,
) -> Result<RootingOutcome> {
    nonempty("n", ns)?;
    nonempty("r", rs)?;
    let pairs =
        draw_pairs::<UnrootedTopology>(ns, rs, trials, seed, |n| LeafSet::range(0, n as u32 - 1));
    let check = |(_, _, (s1, s2)): &(usize, usize, Counterexample<UnrootedTopology>)| {
        rooting_reduction_check(s1, s2, LeafLabel(0))
    };
    let reports: Vec<_> = if parallel {
        pairs.par_iter().map(check).collect::<Result<_>>()?
    } else {
        pairs.iter().map(check).collect::<Result<_>>()?
    };
    let mut out = RootingOutcome {
        trials,
        rooted_distinct: 0,
        sets_checked: 0,
        violations: 0,
        counterexample: None,
    };
    for (rep, (_, _, pair)) in reports.into_iter().zip(pairs) {
        out.rooted_distinct += usize::from(rep.rooted_distinct);
        out.sets_checked += rep.checked;
        if !rep.holds() {
            out.violations += 1;
            if out.counterexample.is_none() {
                out.counterexample = Some((rep.violations, pair));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct BridgeOutcome {
    pub trials: usize,
    /// Complexes compared per pair: `Γ_r` and every smaller budget from 3.
    pub comparisons: usize,
    /// Comparisons where both sides reported agreement.
    pub agreeing: usize,
    pub discrepancies: usize,
    /// Budget and pair of the first discrepancy.
    pub counterexample: Option<(usize, Counterexample<RootedTopology>)>,
}

impl BridgeOutcome {
    pub fn passed(&self) -> bool {
        self.discrepancies == 0
    }
}

/// Both sides of the bridge for one complex: marginals on the complex
/// agree, and restrictions to every `min(budget, n)`-subset agree.
pub fn bridge_sides(
    s1: &TreeMultiset<RootedTopology>,
    s2: &TreeMultiset<RootedTopology>,
    gamma: &TripleComplex,
) -> Result<(bool, bool)> {
    let u1 = encode_multiset(s1)?;
    let u2 = encode_multiset(s2)?;
    let tables = marginals_equal(&u1, &u2, gamma)?;
    let size = gamma.budget().min(s1.leaves().len());
    let trees = s1
        .leaves()
        .subsets_of_size(size)
        .all(|k| s1.restrict_unchecked(k) == s2.restrict_unchecked(k));
    Ok((tables, trees))
}

/// Seeded random rooted pairs on `{1, ..., n}`, compared through `Γ_r`
/// and through every budget `3 ..= min(g(r), n)`. Every fifth trial
/// compares a multiset with itself so the agreeing direction is exercised
/// on `Γ_r` as well.
pub fn bridge_suite(
    ns: &[usize],
    rs: &[usize],
    trials: usize,
    seed: u64,
    parallel: bool,
) -> Result<BridgeOutcome> {
    nonempty("n", ns)?;
    nonempty("r", rs)?;
    if let Some(&n) = ns.iter().find(|&&n| n < 3) {
        return Err(Error::TooFewLeaves { found: n, min: 3 });
    }
    let mut pairs =
        draw_pairs::<RootedTopology>(ns, rs, trials, seed, |n| LeafSet::range(1, n as u32));
    for (_, _, (s1, s2)) in pairs.iter_mut().step_by(5) {
        *s2 = s1.clone();
    }
    let check = |(n, r, (s1, s2)): &(usize, usize, Counterexample<RootedTopology>)| {
        let leaves = s1.leaves();
        let mut results = vec![(
            g(*r),
            bridge_sides(s1, s2, &TripleComplex::gamma_r(leaves, *r)?)?,
        )];
        for budget in 3..=g(*r).min(*n) {
            results.push((
                budget,
                bridge_sides(s1, s2, &TripleComplex::new(leaves, budget)?)?,
            ));
        }
        Ok(results)
    };
    let results: Vec<Vec<(usize, (bool, bool))>> = if parallel {
        pairs.par_iter().map(check).collect::<Result<_>>()?
    } else {
        pairs.iter().map(check).collect::<Result<_>>()?
    };
    let mut out = BridgeOutcome {
        trials,
        comparisons: 0,
        agreeing: 0,
        discrepancies: 0,
        counterexample: None,
    };
    for (res, (_, _, pair)) in results.into_iter().zip(pairs) {
        for (budget, (tables, trees)) in res {
            out.comparisons += 1;
            out.agreeing += usize::from(tables && trees);
            if tables != trees {
                out.discrepancies += 1;
                if out.counterexample.is_none() {
                    out.counterexample = Some((budget, pair.clone()));
                }
            }
        }
    }
    Ok(out)
}

/// Named kernel instance.
#[derive(Debug, Clone)]
pub struct KahleCase {
    pub name: String,
    pub dims: Vec<usize>,
    /// Smallest non-face cardinality.
    pub s: usize,
    pub norm: Option<u64>,
}

impl KahleCase {
    /// Any kernel element found has 1-norm at least `2^s`.
    pub fn passed(&self) -> bool {
        self.norm.is_none_or(|v| v >= 1 << self.s)
    }
}

#[derive(Debug, Clone)]
pub struct KahleOutcome {
    pub entry_bound: u32,
    pub cases: Vec<KahleCase>,
}

impl KahleOutcome {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(KahleCase::passed)
    }
}

/// The standard instances: a single vertex with no faces beyond the empty
/// one (`s = 1`), two disconnected vertices (`s = 2`), the boundary of a
/// triangle (`s = 3`), each with two and with three levels per vertex.
pub fn kahle_instances() -> Vec<(String, SmallComplexInstance)> {
    let mut out = Vec::new();
    for d in [2, 3] {
        for (s, k) in [(1usize, 1usize), (2, 2), (3, 3)] {
            let dims = vec![d; k];
            let name = format!("s={s} dims={}", vec![d.to_string(); k].join("x"));
            let inst = SmallComplexInstance::skeleton(dims, s - 1).expect("valid skeleton");
            out.push((name, inst));
        }
    }
    out
}

/// Minimum kernel 1-norm of every standard instance, checked against `2^s`.
pub fn kahle_suite(entry_bound: u32, parallel: bool) -> Result<KahleOutcome> {
    let instances = kahle_instances();
    let run = |(name, inst): &(String, SmallComplexInstance)| -> Result<KahleCase> {
        Ok(KahleCase {
            name: name.clone(),
            dims: inst.dims().to_vec(),
            s: inst.smallest_nonface_size().expect("proper complex"),
            norm: min_kernel_one_norm(inst, entry_bound)?,
        })
    };
    let cases = if parallel {
        instances.par_iter().map(run).collect::<Result<_>>()?
    } else {
        instances.iter().map(run).collect::<Result<_>>()?
    };
    Ok(KahleOutcome { entry_bound, cases })
}
