use super::table::{marginal, SparseTableVector};
use crate::error::{Error, Result};
use crate::g;
use crate::tree::{Combinations, LeafSet, LeafTriple};

/// Simplicial complex on the 3-subsets of a leaf set: a collection of
/// triples is a face iff their union has at most `budget` leaves.
///
/// Kept intensional; faces are never listed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripleComplex {
    leaves: LeafSet,
    budget: usize,
}

impl TripleComplex {
    pub fn new(leaves: LeafSet, budget: usize) -> Result<Self> {
        if leaves.len() < 3 {
            return Err(Error::TooFewLeaves {
                found: leaves.len(),
                min: 3,
            });
        }
        Ok(TripleComplex { leaves, budget })
    }

    /// `Γ_r`: budget `g(r) = 3(⌊log₂ r⌋ + 1)`.
    pub fn gamma_r(leaves: LeafSet, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::OutOfRange {
                what: "r",
                value: 0,
                range: ">= 1".into(),
            });
        }
        TripleComplex::new(leaves, g(r))
    }

    pub fn leaves(&self) -> LeafSet {
        self.leaves
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn is_face(&self, triples: &[LeafTriple]) -> bool {
        let union = triples
            .iter()
            .fold(LeafSet::EMPTY, |acc, t| acc.union(t.as_set()));
        union.is_subset(self.leaves) && union.len() <= self.budget
    }

    /// Leaf sets `U` whose triples form the facets: every `U` of size
    /// `min(budget, n)`.
    pub fn facet_supports(&self) -> Combinations {
        self.leaves
            .subsets_of_size(self.budget.min(self.leaves.len()))
    }

    /// Facets as triple lists. When the budget is below 3 the only facet is
    /// the empty face.
    pub fn facets(&self) -> impl Iterator<Item = Vec<LeafTriple>> + '_ {
        let small = self.budget < 3;
        let supports: Box<dyn Iterator<Item = LeafSet>> = if small {
            Box::new(std::iter::once(LeafSet::EMPTY))
        } else {
            Box::new(self.facet_supports())
        };
        supports.map(LeafTriple::all_in)
    }
}

/// `Γ_r` on leaves `{1, ..., n}`.
pub fn gamma_r(n: usize, r: usize) -> Result<TripleComplex> {
    if !(3..=63).contains(&n) {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as u64,
            range: "3..=63".into(),
        });
    }
    TripleComplex::gamma_r(LeafSet::range(1, n as u32), r)
}

/// Whether some `m` distinct triples on `leaves` have a union larger than
/// `budget`. Depth-first over triples in lexicographic order, pruning
/// branches that cannot exceed the budget even if every further triple
/// brought three new leaves.
fn exists_collection_exceeding(triples: &[LeafSet], m: usize, budget: usize) -> bool {
    fn dfs(triples: &[LeafSet], start: usize, left: usize, union: LeafSet, budget: usize) -> bool {
        if union.len() > budget {
            return true;
        }
        if left == 0 || union.len() + 3 * left <= budget {
            return false;
        }
        (start..triples.len()).any(|i| {
            triples.len() - i >= left
                && dfs(triples, i + 1, left - 1, union.union(triples[i]), budget)
        })
    }
    dfs(triples, 0, m, LeafSet::EMPTY, budget)
}

/// Size of the smallest collection of triples that is not a face.
///
/// Found by search and checked against the closed form `⌊budget/3⌋ + 1`
/// (`⌊log₂ r⌋ + 2` for `Γ_r`), which requires that many disjoint triples,
/// i.e. `n >= 3(⌊budget/3⌋ + 1)`. Smaller leaf sets are reported as an
/// error.
pub fn smallest_nonface_size(gamma: &TripleComplex) -> Result<usize> {
    let closed_form = gamma.budget / 3 + 1;
    let n = gamma.leaves.len();
    if n < 3 * closed_form {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as u64,
            range: format!(">= {} for budget {}", 3 * closed_form, gamma.budget),
        });
    }
    let triples: Vec<LeafSet> = LeafTriple::all_in(gamma.leaves)
        .into_iter()
        .map(LeafTriple::as_set)
        .collect();
    let found = (1..=triples.len())
        .find(|&m| exists_collection_exceeding(&triples, m, gamma.budget))
        .expect("the disjoint collection exceeds the budget");
    assert_eq!(found, closed_form, "search disagrees with the closed form");
    Ok(found)
}

/// `π_Γ(u1) = π_Γ(u2)`, compared on facets only; equality on every facet
/// implies equality on every face since each face marginal is a further
/// marginal of a facet marginal.
pub fn marginals_equal(
    u1: &SparseTableVector,
    u2: &SparseTableVector,
    gamma: &TripleComplex,
) -> Result<bool> {
    if u1.leaves() != gamma.leaves || u2.leaves() != gamma.leaves {
        return Err(Error::MixedLeafSets);
    }
    for facet in gamma.facets() {
        if marginal(u1, &facet)? != marginal(u2, &facet)? {
            return Ok(false);
        }
    }
    Ok(true)
}
