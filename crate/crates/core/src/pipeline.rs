//! Tridiagonal pipeline: conjugate a tridiagonal Q-matrix with interior
//! killing into one that is killed only at the last state, then run a
//! shifted inverse iteration whose initial vector and shifts come from
//! explicit variational bounds.
//!
//! The stages are [`compute_h`], [`h_transform`], [`compute_mu_phi`],
//! [`delta_k`] and the driver [`algorithm17`]. Dense input is brought into
//! Q form by [`shift_tridiagonal`].

use crate::error::{Error, Result};
use crate::iterations::{AlgorithmId, Eigenpair, IterationConfig, IterationStep, IterationTrace, StopReason};
use crate::iterations::SOLVE_BACKWARD_TOLERANCE;
use crate::linalg::{thomas_solve, weighted_norm, DenseMatrix, RatioStats, Tridiagonal, TridiagonalQ};
use crate::spectra::shift_a_to_q;

/// Largest `μ` kept without rescaling.
pub const MU_RESCALE_THRESHOLD: f64 = 1e280;

/// Bracket width under which a lost sign is attributed to rounding.
const ROUNDING_BRACKET: f64 = 1e-12;

/// The conjugating sequence `h` with its successive ratios `r_n = h_{n+1} / h_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct HData {
    pub r: Vec<f64>,
    pub h: Vec<f64>,
    /// Value one past the last state; sets the killing rate of the transform.
    pub h_next: f64,
    /// No interior killing, so `h ≡ 1`.
    pub degenerate: bool,
}

/// Builds `h` so that `Diag(h)⁻¹ Q Diag(h)` has zero row sums on every
/// state except the last.
pub fn compute_h(q: &TridiagonalQ) -> Result<HData> {
    let n = q.last();
    let kappa = q.last_killing();
    if q.c_slice()[..n].iter().all(|&c| c == 0.0) {
        return Ok(HData { r: vec![1.0; n], h: vec![1.0; n + 1], h_next: kappa, degenerate: true });
    }
    let mut r = Vec::with_capacity(n);
    r.push(1.0 + q.c(0) / q.b(0));
    for i in 1..n {
        let (a, b) = (q.a(i), q.b(i));
        r.push(1.0 + (a + q.c(i)) / b - a / (b * r[i - 1]));
    }
    if let Some(index) = r.iter().position(|&x| !(x > 0.0)) {
        return Err(Error::NonpositiveR { index });
    }
    let mut h = Vec::with_capacity(n + 1);
    h.push(1.0);
    for i in 0..n {
        h.push(h[i] * r[i]);
    }
    let h_next = kappa * h[n] + q.a(n) * (h[n] - h[n - 1]);
    if !(h_next > 0.0) || !h.iter().all(|x| x.is_finite()) {
        return Err(Error::NonpositiveR { index: n });
    }
    Ok(HData { r, h, h_next, degenerate: false })
}

/// `Diag(h)⁻¹ Q Diag(h)` in reduced form. Rates are built from the ratios
/// `r_n`, so large `h` does not overflow the transform.
pub fn h_transform(q: &TridiagonalQ, h: &HData) -> Result<TridiagonalQ> {
    let n = q.last();
    if h.h.len() != n + 1 {
        return Err(Error::DimensionMismatch { expected: n + 1, found: h.h.len() });
    }
    let a = (1..=n).map(|i| q.a(i) / h.r[i - 1]).collect();
    let mut b: Vec<f64> = (0..n).map(|i| q.b(i) * h.r[i]).collect();
    b.push(if h.degenerate { h.h_next } else { h.h_next / h.h[n] });
    TridiagonalQ::reduced(a, b)
}

/// Speed measure `μ`, tail sums `φ`, and the initial bound `δ₁`.
///
/// `mu` may be a rescaled copy of the true measure, `μ = mu·exp(log_scale)`;
/// `phi` is computed from the stored `mu`. Every quantity the pipeline
/// derives from them is invariant under that rescale.
#[derive(Debug, Clone, PartialEq)]
pub struct MuPhi {
    pub mu: Vec<f64>,
    pub phi: Vec<f64>,
    pub delta1: f64,
    pub log_scale: f64,
}

/// Requires the reduced form (`c ≡ 0`) with positive last killing.
pub fn compute_mu_phi(qt: &TridiagonalQ) -> Result<MuPhi> {
    if !qt.is_reduced() {
        return Err(Error::InvalidRates("compute_mu_phi needs zero interior killing".into()));
    }
    let n = qt.last();
    let b = qt.b_slice();
    if !(b[n] > 0.0) {
        return Err(Error::InvalidRates(format!("b_{n} must be positive")));
    }
    let mut mu = Vec::with_capacity(n + 1);
    mu.push(1.0f64);
    for i in 1..=n {
        mu.push(mu[i - 1] * b[i - 1] / qt.a(i));
    }
    let mut log_scale = 0.0;
    if mu.iter().any(|&m| !(m <= MU_RESCALE_THRESHOLD)) {
        let mut logs = Vec::with_capacity(n + 1);
        logs.push(0.0f64);
        for i in 1..=n {
            logs.push(logs[i - 1] + b[i - 1].ln() - qt.a(i).ln());
        }
        log_scale = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        mu = logs.iter().map(|l| (l - log_scale).exp()).collect();
    }
    if let Some(index) = mu.iter().position(|&m| !(m > 0.0 && m.is_finite())) {
        return Err(Error::OverflowGuard { index });
    }
    let mut phi = vec![0.0; n + 1];
    let mut acc = 0.0;
    for i in (0..=n).rev() {
        acc += 1.0 / (mu[i] * b[i]);
        phi[i] = acc;
    }
    if let Some(index) = phi.iter().position(|p| !p.is_finite()) {
        return Err(Error::OverflowGuard { index });
    }
    let mut tail: Vec<f64> = vec![0.0; n + 2];
    for j in (0..=n).rev() {
        tail[j] = tail[j + 1] + mu[j] * phi[j] * phi[j].sqrt();
    }
    let mut head = 0.0;
    let mut delta1 = f64::NEG_INFINITY;
    for i in 0..=n {
        let s = phi[i].sqrt();
        head += mu[i] * s;
        delta1 = delta1.max(s * head + tail[i + 1] / s);
    }
    Ok(MuPhi { mu, phi, delta1, log_scale })
}

/// `max_i (1/v_i)[φ_i Σ_{j<=i} μ_j v_j + Σ_{j>i} μ_j φ_j v_j]` in `O(N)`.
///
/// This equals `max_i ((-Q̃)⁻¹v)_i / v_i`, so its inverse is a lower bound
/// for `λ_min(-Q̃)` at any positive `v`.
pub fn delta_k(mp: &MuPhi, v: &[f64]) -> Result<f64> {
    let n = mp.mu.len();
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: v.len() });
    }
    if let Some(index) = v.iter().position(|&x| x == 0.0) {
        return Err(Error::ZeroComponent { index });
    }
    if let Some(index) = v.iter().position(|&x| !(x > 0.0)) {
        return Err(Error::NonpositiveComponent { index });
    }
    let mut tail = vec![0.0; n + 1];
    for j in (0..n).rev() {
        tail[j] = tail[j + 1] + mp.mu[j] * mp.phi[j] * v[j];
    }
    let mut head = 0.0;
    let mut best = f64::NEG_INFINITY;
    for i in 0..n {
        head += mp.mu[i] * v[i];
        best = best.max((mp.phi[i] * head + tail[i + 1]) / v[i]);
    }
    Ok(best)
}

/// Shift of a nonnegative tridiagonal `A` to `Q = A - mI`, read as a
/// [`TridiagonalQ`] whose killing is `c_i = m - Σ_j a_ij`.
pub fn shift_tridiagonal(a: &DenseMatrix<f64>) -> Result<(TridiagonalQ, f64)> {
    if let Some((row, col)) = a.off_tridiagonal_entry() {
        return Err(Error::NotTridiagonal { row, col });
    }
    let (q, m) = shift_a_to_q(a);
    Ok((TridiagonalQ::from_dense(&q)?, m))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Shift by the weighted Rayleigh quotient.
    A,
    /// Shift by `1/δ_k`, a certified lower bound.
    B,
}

impl Variant {
    pub fn algorithm(self) -> AlgorithmId {
        match self {
            Variant::A => AlgorithmId::Tri17a,
            Variant::B => AlgorithmId::Tri17b,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Algo17Result {
    /// Minimal eigenpair of `-Q̃`; the vector has unit `L²(μ)` norm.
    pub eigenpair: Eigenpair<f64>,
    /// `m - λ_min(-Q̃)`: the maximal eigenvalue of `A = Q + mI`.
    pub rho_a: f64,
    /// `Diag(h)·v`, an eigenvector of `Q` (and of `A`).
    pub g: Vec<f64>,
    pub variant: Variant,
    pub h: HData,
    pub m: f64,
}

impl Algo17Result {
    /// `m - z⁽ᵏ⁾` for `k >= 1`: the estimates of `ρ(A)` step by step.
    pub fn rho_sequence(&self) -> Vec<f64> {
        self.eigenpair.trace.shifts().into_iter().map(|z| self.m - z).collect()
    }
}

fn weighted_rayleigh(neg: &Tridiagonal, mu: &[f64], v: &[f64]) -> Result<(f64, f64)> {
    let tv = neg.matvec(v)?;
    let rq: f64 = mu.iter().zip(v).zip(&tv).map(|((m, x), t)| m * x * t).sum();
    let res: Vec<f64> = tv.iter().zip(v).map(|(t, x)| t - rq * x).collect();
    Ok((rq, weighted_norm(&res, mu)?))
}

fn lower_bound(neg: &Tridiagonal, v: &[f64]) -> Result<f64> {
    if v.iter().all(|&x| x > 0.0) {
        Ok(RatioStats::from_image(&neg.matvec(v)?, v)?.min)
    } else {
        Ok(f64::NEG_INFINITY)
    }
}

/// Minimal eigenpair of `-Q` for a tridiagonal Q-matrix, reported also as
/// the maximal eigenpair of `A = Q + mI`.
///
/// Starts at `v⁰ ∝ √φ` with `z⁰ = 1/δ₁`, solves `(-Q̃ - zI) w = v` by
/// tridiagonal elimination, normalizes in `L²(μ)`, and stops when
/// successive shifts differ by less than `cfg.tol`. Trace steps record
/// `x` = CW lower bound of `-Q̃` at `v`, `y` = weighted Rayleigh quotient,
/// `z` = the next shift.
pub fn algorithm17(q: &TridiagonalQ, m: f64, variant: Variant, cfg: &IterationConfig) -> Result<Algo17Result> {
    cfg.validate()?;
    let h = compute_h(q)?;
    let qt = h_transform(q, &h)?;
    let mp = compute_mu_phi(&qt)?;
    let neg = qt.to_tridiagonal().negated();

    let w0: Vec<f64> = mp.phi.iter().map(|p| p.sqrt()).collect();
    let norm0 = weighted_norm(&w0, &mp.mu)?;
    let mut v: Vec<f64> = w0.iter().map(|x| x / norm0).collect();
    let mut z = 1.0 / mp.delta1;
    let (y0, res0) = weighted_rayleigh(&neg, &mp.mu, &v)?;
    let mut steps =
        vec![IterationStep { n: 0, x: lower_bound(&neg, &v)?, y: y0, z, v: v.clone(), residual: res0 }];
    let mut bracket = y0 - z;
    let mut stop_reason = StopReason::MaxIter;

    for k in 1..=cfg.max_iter {
        let sys = neg.shifted(-z);
        let mut w = match thomas_solve(&sys, &v) {
            Ok(w) => w,
            Err(Error::SingularSystem { .. }) => {
                stop_reason = StopReason::SingularStop;
                break;
            }
            Err(e) => return Err(e),
        };
        if !w.iter().all(|x| x.is_finite()) || sys.backward_error(&w, &v)? > SOLVE_BACKWARD_TOLERANCE {
            stop_reason = StopReason::SingularStop;
            break;
        }
        if w.iter().sum::<f64>() < 0.0 {
            w.iter_mut().for_each(|x| *x = -*x);
        }
        if variant == Variant::B {
            if let Some(index) = w.iter().position(|&x| !(x > 0.0)) {
                if bracket.abs() <= ROUNDING_BRACKET * (1.0 + z.abs()) {
                    stop_reason = StopReason::ConvergedDelta;
                    break;
                }
                return Err(Error::PositivityViolation { step: k, index });
            }
        }
        let norm = weighted_norm(&w, &mp.mu)?;
        v = w.iter().map(|x| x / norm).collect();
        let (rq, residual) = weighted_rayleigh(&neg, &mp.mu, &v)?;
        let z_new = match variant {
            Variant::A => rq,
            Variant::B => 1.0 / delta_k(&mp, &v)?,
        };
        let x = lower_bound(&neg, &v)?;
        bracket = rq - z_new;
        let done = (z_new - z).abs() < cfg.tol;
        z = z_new;
        steps.push(IterationStep { n: k, x, y: rq, z, v: v.clone(), residual });
        if done {
            stop_reason = StopReason::ConvergedDelta;
            break;
        }
    }

    let last = steps.last().expect("initial step");
    let value = last.z;
    let vector = last.v.clone();
    let g = h.h.iter().zip(&vector).map(|(h, v)| h * v).collect();
    let solves_performed = steps.len() - 1;
    Ok(Algo17Result {
        eigenpair: Eigenpair {
            value,
            vector,
            algorithm: variant.algorithm(),
            trace: IterationTrace { steps, stop_reason, solves_performed },
        },
        rho_a: m - value,
        g,
        variant,
        h,
        m,
    })
}
