//! Dense and tridiagonal building blocks shared by every iteration engine.

mod dense;
mod lu;
mod ops;
mod scalar;
mod tridiagonal;

pub use dense::{matvec, DenseMatrix};
pub use lu::{backward_error, lu_solve, LuFactors};
pub use ops::{
    euclidean_norm, rayleigh_quotient, ratio_stats, weighted_norm, RatioStats, NORMALIZATION_SLACK,
};
pub(crate) use lu::refine;
pub(crate) use ops::inner;
pub use scalar::Scalar;
pub use tridiagonal::{thomas_solve, Tridiagonal, TridiagonalQ, THOMAS_PIVOT_FLOOR};
