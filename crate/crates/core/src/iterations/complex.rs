use num_complex::Complex64;

use super::{
    AlgorithmId, Eigenpair, IterationConfig, IterationStep, IterationTrace, StopReason, StopRule,
    SOLVE_BACKWARD_TOLERANCE,
};
use crate::error::{Error, Result};
use crate::linalg::{backward_error, euclidean_norm, inner, refine, DenseMatrix, LuFactors, RatioStats};

fn solve(a: &DenseMatrix<Complex64>, z: f64, v: &[Complex64]) -> Result<Option<Vec<Complex64>>> {
    let m = a.scale(Complex64::new(-1.0, 0.0)).shifted(Complex64::new(z, 0.0));
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
    if backward_error(&m, &w, v)? > SOLVE_BACKWARD_TOLERANCE {
        return Ok(None);
    }
    if w.iter().map(|x| x.re).sum::<f64>() < 0.0 {
        w.iter_mut().for_each(|x| *x = -*x);
    }
    Ok(Some(w))
}

struct Observation {
    stats: RatioStats,
    y: Complex64,
    v: Vec<Complex64>,
    residual: f64,
}

fn observe(a: &DenseMatrix<Complex64>, re_a: &DenseMatrix<f64>, w: &[Complex64]) -> Result<Observation> {
    let re_w: Vec<f64> = w.iter().map(|x| x.re).collect();
    let stats = RatioStats::from_image(&re_a.matvec(&re_w)?, &re_w)?;
    let norm = euclidean_norm(w);
    let v: Vec<Complex64> = w.iter().map(|x| x / norm).collect();
    let av = a.matvec(&v)?;
    let y = inner(&v, &av, None);
    let residual = av.iter().zip(&v).map(|(p, q)| (p - y * q).norm_sqr()).sum::<f64>().sqrt();
    Ok(Observation { stats, y, v, residual })
}

/// Shifted inverse iteration for complex `A` whose powers have eventually
/// positive real parts.
///
/// The shift is the upper CW bound of `Re(A)` at `Re(w)`; it bounds `ρ(A)`
/// from above but need not converge to it. The eigenvalue estimate is the
/// Hermitian Rayleigh quotient `y = vᴴAv`, which does. The run stops when
/// successive `y` differ by less than `tol` in modulus ([`StopRule::ShiftDelta`]
/// tests `z` instead; [`StopRule::RatioGap`] is read as the `y` rule).
pub fn sii_complex(a: &DenseMatrix<Complex64>, cfg: &IterationConfig) -> Result<Eigenpair<Complex64>> {
    cfg.validate()?;
    let n = a.n();
    let re_a = a.real_part();
    let z0 = re_a.row_sums().into_iter().fold(f64::NEG_INFINITY, f64::max);
    let w0 = vec![Complex64::new(1.0, 0.0); n];
    let obs = observe(a, &re_a, &w0)?;
    let mut steps = vec![IterationStep { n: 0, x: obs.stats.min, y: obs.y, z: z0, v: obs.v.clone(), residual: obs.residual }];
    let mut z = z0;
    let mut v = obs.v;
    let mut stop_reason = StopReason::MaxIter;

    for k in 1..=cfg.max_iter {
        let w = match solve(a, z, &v)? {
            Some(w) if w.iter().all(|x| x.re != 0.0) => Some(w),
            _ => solve(a, z + cfg.tol, &v)?,
        };
        let Some(w) = w else {
            stop_reason = StopReason::SingularStop;
            break;
        };
        let obs = observe(a, &re_a, &w)?;
        let prev = steps.last().expect("initial step");
        let done = k >= 2
            && match cfg.stop_rule {
                StopRule::ShiftDelta => (obs.stats.max - prev.z).abs() < cfg.tol,
                StopRule::RatioGap | StopRule::ComplexYDelta => (obs.y - prev.y).norm() < cfg.tol,
            };
        z = obs.stats.max;
        v = obs.v.clone();
        steps.push(IterationStep { n: k, x: obs.stats.min, y: obs.y, z, v: obs.v, residual: obs.residual });
        if done {
            stop_reason = StopReason::ConvergedDelta;
            break;
        }
    }
    let solves_performed = steps.len() - 1;
    let last = steps.last().expect("initial step");
    Ok(Eigenpair {
        value: last.y,
        vector: last.v.clone(),
        algorithm: AlgorithmId::SiiComplex,
        trace: IterationTrace { steps, stop_reason, solves_performed },
    })
}
