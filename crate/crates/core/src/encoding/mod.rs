//! Multisets of rooted trees as contingency tables: the sparse encodings
//! `e_T` and `u_S`, marginal maps, the triple complex `Γ_r`, and an
//! exhaustive minimum-norm kernel search for small complexes.

mod complex;
mod kernel;
mod table;

pub use complex::{gamma_r, marginals_equal, smallest_nonface_size, TripleComplex};
pub use kernel::{min_kernel_one_norm, SmallComplexInstance, MAX_KERNEL_CELLS, MAX_KERNEL_SEARCH};
pub use table::{
    decode_multiset, encode_multiset, encode_tree, marginal, tree_from_triples, tree_key,
    SparseTableVector,
};
