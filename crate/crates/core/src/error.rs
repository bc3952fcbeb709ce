use thiserror::Error;

use crate::tree::LeafLabel;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("duplicate leaf label `{0}`")]
    DuplicateLabel(String),

    #[error("node at byte {position} has {found} children, expected {expected}")]
    Arity {
        position: usize,
        expected: usize,
        found: usize,
    },

    #[error("tree has {found} leaves, at least {min} required")]
    TooFewLeaves { found: usize, min: usize },

    #[error("leaf id {0} exceeds the supported maximum of {max}", max = crate::tree::MAX_LEAVES - 1)]
    LeafOutOfRange(u64),

    #[error("label `{name}` cannot take id {id}: already assigned to `{other}`")]
    LabelConflict {
        name: String,
        id: u32,
        other: String,
    },

    #[error("unknown leaf label `{0}`")]
    UnknownLabel(String),

    #[error("leaf {0} is not in the tree")]
    MissingLeaf(LeafLabel),

    #[error("leaf {0} is already in the tree")]
    LeafAlreadyPresent(LeafLabel),

    #[error("restriction set is not a subset of the leaf set")]
    NotASubset,

    #[error("restriction to {found} leaves, at least {min} required")]
    RestrictionTooSmall { found: usize, min: usize },

    #[error("trees in a multiset must share one leaf set")]
    MixedLeafSets,

    #[error("multiset is empty")]
    EmptyMultiset,

    #[error("multisets have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("multisets are identical; no disentangling set exists")]
    IdenticalMultisets,

    #[error("{what} = {value} is outside the supported range {range}")]
    OutOfRange {
        what: &'static str,
        value: u64,
        range: String,
    },

    #[error("marginal axes are not a subset of the table's axes")]
    MalformedAxes,

    #[error("table is not a nonnegative sum of tree encodings")]
    NotRealizable,

    #[error("face family is not closed downward")]
    NotDownwardClosed,

    #[error("search space too large: {0}")]
    Infeasible(String),
}

impl Error {
    /// Parse-level failures: malformed or unsupported tree text.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::DuplicateLabel(_)
                | Error::Arity { .. }
                | Error::TooFewLeaves { .. }
                | Error::LeafOutOfRange(_)
                | Error::LabelConflict { .. }
        )
    }

    /// Failures caused by a label argument that does not fit the tree.
    pub fn is_label_error(&self) -> bool {
        matches!(
            self,
            Error::UnknownLabel(_)
                | Error::MissingLeaf(_)
                | Error::LeafAlreadyPresent(_)
                | Error::NotASubset
                | Error::RestrictionTooSmall { .. }
                | Error::MixedLeafSets
        )
    }
}
