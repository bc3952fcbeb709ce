//! Tree multisets and the disentangling number: exact minimum
//! disentangling sets, bound checks and exhaustive small-`n` values.

mod checks;
mod multiset;
mod search;

pub use checks::{
    check_upper_bound, exact_d, exact_disentangling_number, exact_rd, rooting_reduction_check,
    BoundReport, ExactReport, RootingReport, MAX_EXACT_PAIRS,
};
pub use multiset::{restrict_multiset, TreeMultiset};
pub use search::{disentangles, min_disentangling, min_disentangling_par, DisentangleResult};
