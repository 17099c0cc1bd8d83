use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// `|two_m| == n`: the large-spin asymptotic profile diverges at the edges.
    #[error("edge singularity at two_m = {two_m}")]
    EdgeSingularity { two_m: i64 },

    #[error("matrix is not gauge-realifiable: offset {offset} entry {index} = {value}")]
    NotRealifiable { offset: usize, index: usize, value: String },

    #[error("matrix is not symmetric: |a[{row}][{col}] - a[{col}][{row}]| = {diff:e}")]
    NotSymmetric { row: usize, col: usize, diff: f64 },

    #[error("complex hermitian input where a real symmetric matrix is required")]
    NotReal,

    #[error("eigensolver failed to converge for eigenvalue index {index}")]
    NoConvergence { index: usize },

    #[error("eigensolver failed at eta = {eta}: {source}")]
    SolveAt {
        eta: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("minimum gap {gap:e} is too small for the runtime bound")]
    DegenerateGap { gap: f64 },

    #[error("norm drift {drift:e} exceeds tolerance at step {step}")]
    NormDrift { step: usize, drift: f64 },

    #[error("singular linear system at pivot {0}")]
    Singular(usize),

    #[error("fit refused: {0}")]
    Fit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
