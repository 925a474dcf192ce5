use thiserror::Error;

use crate::ledger::Witness;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("unsupported catalog request: {0}")]
    UnsupportedCatalog(String),

    #[error("invalid matched pair: {0}")]
    InvalidMatchedPair(String),

    #[error("subspace is not closed under multiplication: {0}")]
    NotClosed(String),

    #[error("functional is not faithful: {0}")]
    NotFaithful(String),

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("solution is not unique: {0}")]
    NotUnique(String),

    #[error("antipode candidate is not antimultiplicative")]
    NotAntimultiplicative(Witness),

    #[error("antipode candidate is not bijective")]
    NotBijective,

    #[error("stored antipode disagrees with the solved one")]
    AntipodeMismatch(Witness),

    #[error("scaling constant does not exist: {0}")]
    NoScalingConstant(String),

    #[error("element is not a group-like idempotent: {0}")]
    NotGroupLike(String),

    #[error("group-like idempotent is exceptional (epsilon(sigma(h)) = 0); construction refused")]
    ExceptionalIdempotent,

    #[error("verification failed: {check}")]
    VerificationFailed { check: String, witness: Option<Witness> },

    #[error("unresolved reference `{0}`")]
    UnresolvedReference(String),

    #[error("object {object:?} has dimension {dim}, above the cap QHF_MAX_DIM = {cap}")]
    DimensionCap { object: String, dim: usize, cap: usize },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn failed(check: impl Into<String>, witness: Option<Witness>) -> Self {
        Error::VerificationFailed { check: check.into(), witness }
    }
}
