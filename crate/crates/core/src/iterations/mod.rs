//! Globally initialized shifted inverse iterations.
//!
//! Five engines share one stepping core:
//!
//! | engine            | target        | shift `z⁽ⁿ⁾`                     |
//! |-------------------|---------------|----------------------------------|
//! | [`rqi_nonneg`]    | `ρ(A)`        | Rayleigh quotient                |
//! | [`sii_nonneg`]    | `ρ(A)`        | `max_j (Aw)_j / w_j`             |
//! | [`rqi_q`]         | `λ_min(-Q)`   | Rayleigh quotient of `-Q`        |
//! | [`sii_q`]         | `λ_min(-Q)`   | `min_j (-Qw)_j / w_j`            |
//! | [`sii_complex`]   | `ρ(A)`, complex `A` | `max_j (Re A Re w)_j / Re w_j` |
//!
//! All start from the constant vector. The `sii` engines keep the shift on
//! the safe side of the target eigenvalue, so every iterate stays positive
//! and the shift sequence is monotone.

mod complex;
mod real;

pub use complex::sii_complex;
pub use real::{convex_initial_shift, rqi_nonneg, rqi_q, sii_nonneg, sii_nonneg_with_start, sii_q};

use crate::error::{Error, Result};
use crate::linalg::Scalar;

/// Backward error above which a shifted solve is rejected.
pub const SOLVE_BACKWARD_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftStrategy {
    /// Rayleigh quotient (Algorithms with a specific RQI flavour).
    Rayleigh,
    /// Upper Collatz–Wielandt bound, for the maximal eigenvalue of `A`.
    CwUpper,
    /// Lower Collatz–Wielandt bound, for the minimal eigenvalue of `-Q`.
    CwLower,
    /// CW shift with a blended initial shift weighted by `xi`.
    Convex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopRule {
    /// `y⁽ⁿ⁾ - x⁽ⁿ⁾ < tol`
    RatioGap,
    /// `|z⁽ⁿ⁾ - z⁽ⁿ⁻¹⁾| < tol`, `n >= 2`
    ShiftDelta,
    /// `|y⁽ⁿ⁾ - y⁽ⁿ⁻¹⁾| < tol`, `n >= 2`
    ComplexYDelta,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationConfig {
    pub tol: f64,
    pub max_iter: usize,
    pub shift_strategy: ShiftStrategy,
    pub xi: f64,
    pub stop_rule: StopRule,
}

impl Default for IterationConfig {
    fn default() -> Self {
        Self {
            tol: 1e-6,
            max_iter: 100,
            shift_strategy: ShiftStrategy::CwUpper,
            xi: 0.69,
            stop_rule: StopRule::RatioGap,
        }
    }
}

impl IterationConfig {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn with_stop_rule(mut self, rule: StopRule) -> Self {
        self.stop_rule = rule;
        self
    }

    pub fn with_strategy(mut self, strategy: ShiftStrategy) -> Self {
        self.shift_strategy = strategy;
        self
    }

    /// Selects the convex-blend initial shift with weight `xi`.
    pub fn with_convex(mut self, xi: f64) -> Self {
        self.shift_strategy = ShiftStrategy::Convex;
        self.xi = xi;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidParameter(format!("tol must be positive, got {}", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidParameter("max_iter must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.xi) {
            return Err(Error::InvalidParameter(format!("xi = {} not in [0, 1]", self.xi)));
        }
        Ok(())
    }
}

/// One row of an iteration trace. For the real engines `x` and `y`
/// are the two quantities not used as the next shift, ordered so that
/// `x <= y <= z` in the `A` form.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationStep<T> {
    pub n: usize,
    pub x: f64,
    pub y: T,
    pub z: f64,
    pub v: Vec<T>,
    /// `|T v - θ v|₂` with `θ` the Rayleigh quotient of the step.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    ConvergedGap,
    ConvergedDelta,
    MaxIter,
    SingularStop,
}

impl StopReason {
    pub fn converged(self) -> bool {
        matches!(self, StopReason::ConvergedGap | StopReason::ConvergedDelta)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::ConvergedGap => "converged_gap",
            StopReason::ConvergedDelta => "converged_delta",
            StopReason::MaxIter => "max_iter",
            StopReason::SingularStop => "singular_stop",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace<T> {
    /// Step 0 records the initial vector and shift.
    pub steps: Vec<IterationStep<T>>,
    pub stop_reason: StopReason,
    pub solves_performed: usize,
}

impl<T: Scalar> IterationTrace<T> {
    /// `z⁽¹⁾, z⁽²⁾, …` (step 0 excluded).
    pub fn shifts(&self) -> Vec<f64> {
        self.steps.iter().skip(1).map(|s| s.z).collect()
    }

    pub fn last(&self) -> &IterationStep<T> {
        self.steps.last().expect("trace has an initial step")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgorithmId {
    /// Specific Rayleigh quotient iteration on `A`.
    Rqi,
    /// Shifted inverse iteration on `A`.
    Sii,
    /// Specific Rayleigh quotient iteration on `-Q`.
    RqiQ,
    /// Shifted inverse iteration on `-Q`.
    SiiQ,
    /// Shifted inverse iteration for complex `A`.
    SiiComplex,
    /// Tridiagonal pipeline, Rayleigh-quotient shifts.
    Tri17a,
    /// Tridiagonal pipeline, δ-bound shifts.
    Tri17b,
}

impl AlgorithmId {
    pub fn as_str(self) -> &'static str {
        match self {
            AlgorithmId::Rqi => "rqi",
            AlgorithmId::Sii => "sii",
            AlgorithmId::RqiQ => "rqi-q",
            AlgorithmId::SiiQ => "sii-q",
            AlgorithmId::SiiComplex => "complex",
            AlgorithmId::Tri17a => "tri17a",
            AlgorithmId::Tri17b => "tri17b",
        }
    }
}

impl std::str::FromStr for AlgorithmId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "rqi" => AlgorithmId::Rqi,
            "sii" => AlgorithmId::Sii,
            "rqi-q" => AlgorithmId::RqiQ,
            "sii-q" => AlgorithmId::SiiQ,
            "complex" => AlgorithmId::SiiComplex,
            "tri17a" => AlgorithmId::Tri17a,
            "tri17b" => AlgorithmId::Tri17b,
            other => return Err(Error::InvalidParameter(format!("unknown algorithm `{other}`"))),
        })
    }
}

/// Approximate eigenpair together with the run that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair<T> {
    pub value: T,
    /// Unit vector in the engine's norm.
    pub vector: Vec<T>,
    pub algorithm: AlgorithmId,
    pub trace: IterationTrace<T>,
}

impl<T: Scalar> Eigenpair<T> {
    pub fn converged(&self) -> bool {
        self.trace.stop_reason.converged()
    }

    pub fn solves(&self) -> usize {
        self.trace.solves_performed
    }

    /// `y` of the final step.
    pub fn final_y(&self) -> T {
        self.trace.last().y
    }
}
