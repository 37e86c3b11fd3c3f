use thiserror::Error;

/// Errors raised by poset, polytope and verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank n = {0}: need n >= 2")]
    InvalidRank(usize),

    #[error("rank n = {n} gives {size} poset elements, more than the supported {max}")]
    RankTooLarge { n: usize, size: usize, max: usize },

    #[error("element ({0}, {1}) is not in the poset")]
    NotInPoset(i32, i32),

    #[error("poset mismatch: {0}")]
    PosetMismatch(String),

    #[error("marking set must contain the diagonal, missing ({0}, {0})")]
    MissingDiagonal(i32),

    #[error("set is not an order ideal: ({0}, {1}) is missing below a member")]
    NotAnIdeal(i32, i32),

    #[error("k = {k} out of range {min}..={max}")]
    StratumOutOfRange { k: usize, min: usize, max: usize },

    #[error("weight has {got} entries, expected {expected}")]
    WeightLength { got: usize, expected: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("ambiguous initial term: {0}")]
    AmbiguousInitialTerm(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("resource guard exceeded: {0}")]
    ResourceGuard(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Process exit code: 1 for internal failures, 2 for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvariantViolation(_) | Error::AmbiguousInitialTerm(_) | Error::DimensionMismatch(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
