use thiserror::Error;

/// Errors produced by the rebricking toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is empty or contains non-finite entries")]
    InvalidMatrix,

    #[error("shape mismatch: expected {expected:?}, found {found:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("matrix is singular at the current tolerance (sigma_min = {sigma_min:e})")]
    Singular { sigma_min: f64 },

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(&'static str),

    #[error("eigenvalue iteration did not converge")]
    NoConvergence,

    #[error("columns of {which} do not form a basis")]
    NotABasis { which: &'static str },

    #[error("{which} is not orthogonal")]
    NotOrthogonal { which: &'static str },

    #[error("matrix is not orthogonal and symmetric")]
    NotOrthogonalSymmetric,

    #[error("dimension {0} is too small")]
    TooSmall(usize),

    #[error("Id + iA is not invertible (sigma_min = {sigma_min:e})")]
    NotRebrickable { sigma_min: f64 },

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),

    #[error("no repairing permutation found after {trials} trials")]
    SearchExhausted { trials: u64 },

    #[error("permutation does not repair the operator (sigma_min = {sigma_min:e})")]
    NotRepaired { sigma_min: f64 },

    #[error("synthesis matrix has rank {rank} < {dim}: not a frame")]
    NotAFrame { rank: usize, dim: usize },

    #[error("frames have different index counts ({left} vs {right})")]
    IndexCountMismatch { left: usize, right: usize },

    #[error("input {which} is rank deficient")]
    RankDeficientInput { which: &'static str },

    #[error("input frame is not a Parseval frame")]
    NotParsevalInput,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("signal length {0} must be even")]
    OddLength(usize),

    #[error("translates of the generator do not form an orthonormal basis")]
    GeneratorNotOnb,

    #[error("row {row}, column {col}: {message}")]
    Parse {
        row: usize,
        col: usize,
        message: String,
    },

    #[error("{0}")]
    Io(String),

    #[error("{which} must be real")]
    NotReal { which: String },

    #[error("grid of {grid} points is too small for K = {k} (need at least {needed})")]
    GridTooSmall {
        grid: usize,
        k: usize,
        needed: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
