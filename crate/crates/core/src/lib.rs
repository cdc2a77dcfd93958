//! Maximal eigenpairs of nonnegative matrices and minimal eigenpairs of
//! `-Q` for Q-matrices, by shifted inverse iterations that start from the
//! constant vector and keep their shifts on the safe side of the target.
//!
//! ```
//! use maxpair_core::{models, sii_nonneg, IterationConfig};
//!
//! let a = models::example6().unwrap();
//! let pair = sii_nonneg(&a, &IterationConfig::default()).unwrap();
//! assert!((pair.value - 17.5124).abs() < 1e-4);
//! ```

pub mod error;
pub mod iterations;
pub mod linalg;
pub mod models;
pub mod pipeline;
pub mod spectra;

pub use error::{Error, Result};
pub use iterations::{
    convex_initial_shift, rqi_nonneg, rqi_q, sii_complex, sii_nonneg, sii_nonneg_with_start, sii_q, AlgorithmId,
    Eigenpair, IterationConfig, IterationStep, IterationTrace, ShiftStrategy, StopReason, StopRule,
};
pub use linalg::{DenseMatrix, Scalar, Tridiagonal, TridiagonalQ};
pub use num_complex::Complex64;
pub use pipeline::{algorithm17, shift_tridiagonal, Algo17Result, HData, MuPhi, Variant};
pub use spectra::{eig_oracle, is_complex_admissible, is_primitive, PrimitivityReport};
