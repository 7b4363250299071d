use thiserror::Error;

/// Failures reported by the exact engines.
///
/// Messages are stable: the CLI forwards them verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero input")]
    ZeroInput,
    #[error("not a unit")]
    NotAUnit,
    #[error("branch point, use branch-parameter chart")]
    BranchPoint,
    #[error("extend base point choice")]
    NotASquare,
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not a basis")]
    NotABasis,
    #[error("raise truncation order")]
    RaiseTruncation,
    #[error("raise trunc_t")]
    RaiseTruncT,
    #[error("input not saturated")]
    NotSaturated,
    #[error("inconsistent twist table: {0}")]
    InconsistentTwist(String),
    #[error("unsupported smoothing: {0}")]
    UnsupportedSmoothing(String),
    #[error("genericity hypotheses h0(w((n+2)P-gQ)) = 1 and h0(w(nP-gQ)) = 0 not satisfied on this curve")]
    GenericityFailure,
    #[error("choose a rational-square sample point")]
    NonRationalPoint,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
