use super::{
    AlgorithmId, Eigenpair, IterationConfig, IterationStep, IterationTrace, ShiftStrategy, StopReason,
    StopRule, SOLVE_BACKWARD_TOLERANCE,
};
use crate::error::{Error, Result};
use crate::linalg::{backward_error, euclidean_norm, refine, DenseMatrix, LuFactors, RatioStats};

/// Row sums may exceed zero by this much before a matrix stops counting as a Q-matrix.
pub const ROW_SUM_SLACK: f64 = 1e-12;

/// Bracket width under which a lost sign is attributed to rounding.
const ROUNDING_BRACKET: f64 = 1e-12;

/// Which side of the target eigenvalue the shift approaches from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    /// Largest eigenvalue of `T`; solves `(zI - T) w = v`.
    Above,
    /// Smallest eigenvalue of `T`; solves `(T - zI) w = v`.
    Below,
}

struct Observation {
    stats: RatioStats,
    rayleigh: f64,
    v: Vec<f64>,
    residual: f64,
}

fn observe(target: &DenseMatrix<f64>, w: &[f64]) -> Result<Observation> {
    let tw = target.matvec(w)?;
    let stats = RatioStats::from_image(&tw, w)?;
    let norm = euclidean_norm(w);
    let v: Vec<f64> = w.iter().map(|x| x / norm).collect();
    let tv: Vec<f64> = tw.iter().map(|x| x / norm).collect();
    let rayleigh: f64 = v.iter().zip(&tv).map(|(a, b)| a * b).sum();
    let residual = tv
        .iter()
        .zip(&v)
        .map(|(t, x)| (t - rayleigh * x).powi(2))
        .sum::<f64>()
        .sqrt();
    Ok(Observation { stats, rayleigh, v, residual })
}

struct Engine<'a> {
    target: &'a DenseMatrix<f64>,
    side: Side,
    strategy: ShiftStrategy,
    cfg: &'a IterationConfig,
    algorithm: AlgorithmId,
}

impl Engine<'_> {
    fn is_safe(&self) -> bool {
        self.strategy != ShiftStrategy::Rayleigh
    }

    /// `(x, y, z)` of a step: `z` is the next shift, `x`/`y` the other two.
    fn assign(&self, o: &Observation) -> (f64, f64, f64) {
        let (lo, hi, rq) = (o.stats.min, o.stats.max, o.rayleigh);
        match (self.strategy, self.side) {
            (ShiftStrategy::Rayleigh, _) => (lo, hi, rq),
            (_, Side::Above) => (lo, rq, hi),
            (_, Side::Below) => (rq, hi, lo),
        }
    }

    fn system(&self, z: f64) -> DenseMatrix<f64> {
        match self.side {
            Side::Above => self.target.scale(-1.0).shifted(z),
            Side::Below => self.target.shifted(-z),
        }
    }

    /// `None` when the shifted system is singular to working precision.
    fn solve(&self, z: f64, v: &[f64]) -> Result<Option<Vec<f64>>> {
        let m = self.system(z);
        let f = match LuFactors::factor(&m) {
            Ok(f) => f,
            Err(Error::SingularSystem { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        let mut w = match f.solve(v) {
            Ok(w) => w,
            Err(Error::SingularSystem { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        refine(&f, |x| m.matvec(x), v, &mut w)?;
        if !w.iter().all(|x| x.is_finite()) || backward_error(&m, &w, v)? > SOLVE_BACKWARD_TOLERANCE {
            return Ok(None);
        }
        if w.iter().sum::<f64>() < 0.0 {
            w.iter_mut().for_each(|x| *x = -*x);
        }
        Ok(Some(w))
    }

    fn step(&self, z: f64, v: &[f64]) -> Result<Option<Vec<f64>>> {
        let first = self.solve(z, v)?;
        let acceptable = |w: &Option<Vec<f64>>| matches!(w, Some(w) if w.iter().all(|&x| x != 0.0));
        if acceptable(&first) {
            return Ok(first);
        }
        let retry = self.solve(z + self.cfg.tol, v)?;
        match retry {
            Some(w) => match w.iter().position(|&x| x == 0.0) {
                Some(index) => Err(Error::ZeroComponent { index }),
                None => Ok(Some(w)),
            },
            None => Ok(None),
        }
    }

    fn run(&self, w0: &[f64], z0: f64) -> Result<Eigenpair<f64>> {
        self.cfg.validate()?;
        if w0.len() != self.target.n() {
            return Err(Error::DimensionMismatch { expected: self.target.n(), found: w0.len() });
        }
        let obs = observe(self.target, w0)?;
        let (x, y, _) = self.assign(&obs);
        let mut steps = vec![IterationStep { n: 0, x, y, z: z0, v: obs.v.clone(), residual: obs.residual }];
        let mut z = z0;
        let mut v = obs.v;
        let mut prev_gap = obs.stats.max - obs.stats.min;
        let mut stop_reason = StopReason::MaxIter;

        for n in 1..=self.cfg.max_iter {
            let Some(w) = self.step(z, &v)? else {
                stop_reason = StopReason::SingularStop;
                break;
            };
            if self.is_safe() {
                if let Some(index) = w.iter().position(|&x| !(x > 0.0)) {
                    if prev_gap <= ROUNDING_BRACKET * (1.0 + z.abs()) {
                        stop_reason = StopReason::ConvergedGap;
                        break;
                    }
                    return Err(Error::PositivityViolation { step: n, index });
                }
            }
            let obs = observe(self.target, &w)?;
            let (x, y, z_new) = self.assign(&obs);
            let prev = steps.last().expect("initial step");
            let done = match self.cfg.stop_rule {
                StopRule::RatioGap => (y - x).abs() < self.cfg.tol,
                StopRule::ShiftDelta => n >= 2 && (z_new - prev.z).abs() < self.cfg.tol,
                StopRule::ComplexYDelta => n >= 2 && (y - prev.y).abs() < self.cfg.tol,
            };
            prev_gap = obs.stats.max - obs.stats.min;
            v = obs.v.clone();
            z = z_new;
            steps.push(IterationStep { n, x, y, z: z_new, v: obs.v, residual: obs.residual });
            if done {
                stop_reason = match self.cfg.stop_rule {
                    StopRule::RatioGap => StopReason::ConvergedGap,
                    _ => StopReason::ConvergedDelta,
                };
                break;
            }
        }
        let solves_performed = steps.len() - 1;
        let last = steps.last().expect("initial step");
        Ok(Eigenpair {
            value: last.z,
            vector: last.v.clone(),
            algorithm: self.algorithm,
            trace: IterationTrace { steps, stop_reason, solves_performed },
        })
    }

    /// When every row of `T` has the same sum the constant vector is exact.
    fn constant_row_sums(&self) -> Option<Eigenpair<f64>> {
        let sums = self.target.row_sums();
        let (lo, hi) = sums.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &s| (a.min(s), b.max(s)));
        if hi - lo > 1e-13 * (1.0 + hi.abs()) {
            return None;
        }
        let n = self.target.n();
        let v = vec![1.0 / (n as f64).sqrt(); n];
        Some(Eigenpair {
            value: hi,
            vector: v.clone(),
            algorithm: self.algorithm,
            trace: IterationTrace {
                steps: vec![IterationStep { n: 0, x: lo, y: hi, z: hi, v, residual: 0.0 }],
                stop_reason: StopReason::ConvergedGap,
                solves_performed: 0,
            },
        })
    }

    fn run_default(&self, z0: f64) -> Result<Eigenpair<f64>> {
        self.cfg.validate()?;
        if let Some(p) = self.constant_row_sums() {
            return Ok(p);
        }
        self.run(&vec![1.0; self.target.n()], z0)
    }
}

fn max_row_sum(a: &DenseMatrix<f64>) -> f64 {
    a.row_sums().into_iter().fold(f64::NEG_INFINITY, f64::max)
}

fn check_q(q: &DenseMatrix<f64>) -> Result<()> {
    for (i, row) in q.rows().enumerate() {
        if let Some(j) = row.iter().enumerate().position(|(j, &x)| j != i && x < 0.0) {
            return Err(Error::InvalidParameter(format!("negative off-diagonal entry ({i}, {j})")));
        }
        let sum: f64 = row.iter().sum();
        if sum > ROW_SUM_SLACK {
            return Err(Error::RowSumViolation { row: i, sum });
        }
    }
    Ok(())
}

/// Rayleigh quotient iteration for `ρ(A)`, started at the constant vector
/// with `z⁽⁰⁾ = max row sum`.
pub fn rqi_nonneg(a: &DenseMatrix<f64>, cfg: &IterationConfig) -> Result<Eigenpair<f64>> {
    let e = Engine { target: a, side: Side::Above, strategy: ShiftStrategy::Rayleigh, cfg, algorithm: AlgorithmId::Rqi };
    e.run_default(max_row_sum(a))
}

/// Shifted inverse iteration for `ρ(A)` with shifts `max_j (Aw)_j / w_j`,
/// which decrease to `ρ(A)` while `min_j (Aw)_j / w_j` increases to it.
///
/// With [`ShiftStrategy::Convex`] the initial shift is
/// `xi·min_j (A1)_j + (1-xi)·v⁰ᵀAv⁰` instead of the max row sum.
pub fn sii_nonneg(a: &DenseMatrix<f64>, cfg: &IterationConfig) -> Result<Eigenpair<f64>> {
    let e = Engine { target: a, side: Side::Above, strategy: ShiftStrategy::CwUpper, cfg, algorithm: AlgorithmId::Sii };
    let z0 = if cfg.shift_strategy == ShiftStrategy::Convex {
        cfg.validate()?;
        let sums = a.row_sums();
        let lo = sums.iter().copied().fold(f64::INFINITY, f64::min);
        let rq = sums.iter().sum::<f64>() / a.n() as f64;
        cfg.xi * lo + (1.0 - cfg.xi) * rq
    } else {
        max_row_sum(a)
    };
    e.run_default(z0)
}

/// [`sii_nonneg`] from a caller-supplied positive start vector `w0`.
pub fn sii_nonneg_with_start(a: &DenseMatrix<f64>, cfg: &IterationConfig, w0: &[f64]) -> Result<Eigenpair<f64>> {
    if let Some(index) = w0.iter().position(|&x| !(x > 0.0)) {
        return Err(Error::NonpositiveComponent { index });
    }
    let e = Engine { target: a, side: Side::Above, strategy: ShiftStrategy::CwUpper, cfg, algorithm: AlgorithmId::Sii };
    let z0 = RatioStats::from_image(&a.matvec(w0)?, w0)?.max;
    e.run(w0, z0)
}

/// Rayleigh quotient iteration for `λ_min(-Q)` from `z⁽⁰⁾ = 0`.
pub fn rqi_q(q: &DenseMatrix<f64>, cfg: &IterationConfig) -> Result<Eigenpair<f64>> {
    check_q(q)?;
    let neg = q.scale(-1.0);
    let e = Engine { target: &neg, side: Side::Below, strategy: ShiftStrategy::Rayleigh, cfg, algorithm: AlgorithmId::RqiQ };
    e.run_default(0.0)
}

/// Shifted inverse iteration for `λ_min(-Q)` with shifts
/// `min_j (-Qw)_j / w_j`, each a certified lower bound.
///
/// With [`ShiftStrategy::Convex`] the initial shift comes from
/// [`convex_initial_shift`] instead of `0`.
pub fn sii_q(q: &DenseMatrix<f64>, cfg: &IterationConfig) -> Result<Eigenpair<f64>> {
    check_q(q)?;
    let z0 = if cfg.shift_strategy == ShiftStrategy::Convex { convex_initial_shift(q, cfg.xi)? } else { 0.0 };
    let neg = q.scale(-1.0);
    let e = Engine { target: &neg, side: Side::Below, strategy: ShiftStrategy::CwLower, cfg, algorithm: AlgorithmId::SiiQ };
    e.run_default(z0)
}

/// Blended initial shift for [`sii_q`].
///
/// Written for `A = Q + mI` the blend is `xi·min_j (A1)_j + (1-xi)·v⁰ᵀAv⁰`;
/// subtracting from `m` gives the `Q`-form value
/// `xi·max_j (-Q1)_j + (1-xi)·v⁰ᵀ(-Q)v⁰` returned here. `xi = 1` is the
/// lower CW bound of `A`, `xi = 0` the Rayleigh quotient.
pub fn convex_initial_shift(q: &DenseMatrix<f64>, xi: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&xi) {
        return Err(Error::InvalidParameter(format!("xi = {xi} not in [0, 1]")));
    }
    let sums: Vec<f64> = q.row_sums().into_iter().map(|s| -s).collect();
    let hi = sums.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let rq = sums.iter().sum::<f64>() / q.n() as f64;
    Ok(xi * hi + (1.0 - xi) * rq)
}
