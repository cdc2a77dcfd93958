use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is empty")]
    Empty,
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("singular system: pivot {pivot} vanished")]
    SingularSystem { pivot: usize },
    #[error("vector component {index} is zero")]
    ZeroComponent { index: usize },
    #[error("vector component {index} is not strictly positive")]
    NonpositiveComponent { index: usize },
    #[error("weight {index} is not strictly positive")]
    NonpositiveWeight { index: usize },
    #[error("vector is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },
    #[error("matrix of order {n} exceeds the limit {max}")]
    SizeExceeded { n: usize, max: usize },
    #[error("row {row} has positive row sum {sum}")]
    RowSumViolation { row: usize, sum: f64 },
    #[error("iterate {step} lost positivity at component {index}")]
    PositivityViolation { step: usize, index: usize },
    #[error("h recursion produced nonpositive r at index {index}")]
    NonpositiveR { index: usize },
    #[error("mu/phi sequence overflowed at index {index}")]
    OverflowGuard { index: usize },
    #[error("matrix is not tridiagonal: entry ({row}, {col}) is nonzero")]
    NotTridiagonal { row: usize, col: usize },
    #[error("invalid tridiagonal rates: {0}")]
    InvalidRates(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("eigenvalue oracle failed to converge")]
    OracleFailed,
}
