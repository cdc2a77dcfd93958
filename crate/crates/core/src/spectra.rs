//! Preconditions and certified bounds: primitivity, Collatz–Wielandt
//! brackets, and the shift between the `A` and `Q` forms.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ratio_stats, DenseMatrix, Scalar};

/// Relative size below which an entry of a normalized power does not count as positive.
pub const POSITIVITY_FLOOR: f64 = 1e-14;

/// Largest order accepted by [`eig_oracle`].
pub const ORACLE_MAX_ORDER: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimitivityReport {
    pub primitive: bool,
    /// Smallest exponent starting a verified run of positive powers.
    pub n0: Option<usize>,
    /// Highest power that was formed.
    pub checked_up_to: usize,
}

/// Wielandt-style default search cap `2(n-1)^2 + 1`.
pub fn default_primitivity_cap(n: usize) -> usize {
    2 * (n - 1) * (n - 1) + 1
}

/// Searches for the least `n0 <= cap` such that `A^k > 0` entrywise for
/// every `k` in `n0..2*n0`, which is equivalent to `A^k > 0` for all
/// `k >= n0`. Works for real matrices with negative entries too: only the
/// powers are tested.
pub fn is_primitive(a: &DenseMatrix<f64>, cap: Option<usize>) -> PrimitivityReport {
    power_search(a, cap.unwrap_or_else(|| default_primitivity_cap(a.n())))
}

/// Complex analogue: positivity is required of `Re(A^k)`, and no power
/// up to the last one formed may vanish.
///
/// The search is finite, so a matrix whose real parts turn positive only
/// beyond the cap is reported as not admissible.
pub fn is_complex_admissible(a: &DenseMatrix<Complex64>, cap: Option<usize>) -> PrimitivityReport {
    power_search(a, cap.unwrap_or_else(|| default_primitivity_cap(a.n())))
}

fn power_search<T: Scalar>(a: &DenseMatrix<T>, cap: usize) -> PrimitivityReport {
    let normalize = |m: DenseMatrix<T>| {
        let s = m.max_abs();
        if s > 0.0 {
            m.scale(T::from_real(1.0 / s))
        } else {
            m
        }
    };
    let mut power = normalize(a.clone());
    let mut run_start: Option<usize> = None;
    let mut k = 1;
    loop {
        if power.max_abs() == 0.0 {
            return PrimitivityReport { primitive: false, n0: None, checked_up_to: k };
        }
        let positive = power.as_slice().iter().all(|x| x.re() > POSITIVITY_FLOOR);
        run_start = match (positive, run_start) {
            (true, None) if k <= cap => Some(k),
            (true, s) => s,
            (false, _) => None,
        };
        if let Some(s) = run_start {
            if k == 2 * s - 1 {
                return PrimitivityReport { primitive: true, n0: Some(s), checked_up_to: k };
            }
        } else if k >= cap {
            return PrimitivityReport { primitive: false, n0: None, checked_up_to: k };
        }
        power = normalize(power.matmul(a).expect("same order"));
        k += 1;
    }
}

fn check_positive(x: &[f64]) -> Result<()> {
    match x.iter().position(|&v| !(v > 0.0)) {
        Some(index) => Err(Error::NonpositiveComponent { index }),
        None => Ok(()),
    }
}

/// Collatz–Wielandt bracket `(min_i (Ax)_i/x_i, max_i (Ax)_i/x_i)` for `x > 0`.
pub fn cw_bounds(a: &DenseMatrix<f64>, x: &[f64]) -> Result<(f64, f64)> {
    check_positive(x)?;
    let s = ratio_stats(a, x)?;
    Ok((s.min, s.max))
}

/// Bracket from `Re(A)`, valid for complex matrices whose powers have
/// eventually positive real parts.
pub fn complex_cw_upper(a: &DenseMatrix<Complex64>, x: &[f64]) -> Result<(f64, f64)> {
    cw_bounds(&a.real_part(), x)
}

/// `Q = A - mI` with `m` the largest row sum of `A`.
pub fn shift_a_to_q(a: &DenseMatrix<f64>) -> (DenseMatrix<f64>, f64) {
    let m = a.row_sums().into_iter().fold(f64::NEG_INFINITY, f64::max);
    (a.shifted(-m), m)
}

/// Full spectrum by Schur decomposition, sorted by decreasing real part.
/// Meant as an independent reference for tests on small matrices.
pub fn eig_oracle<T: Scalar>(a: &DenseMatrix<T>) -> Result<Vec<Complex64>> {
    let n = a.n();
    if n > ORACLE_MAX_ORDER {
        return Err(Error::SizeExceeded { n, max: ORACLE_MAX_ORDER });
    }
    let m = DMatrix::from_fn(n, n, |i, j| a.get(i, j).to_complex());
    let schur = nalgebra::Schur::try_new(m, 1e-15, 10_000).ok_or(Error::OracleFailed)?;
    let mut ev: Vec<Complex64> = schur.eigenvalues().ok_or(Error::OracleFailed)?.iter().copied().collect();
    ev.sort_by(|x, y| y.re.total_cmp(&x.re).then(y.im.total_cmp(&x.im)));
    Ok(ev)
}

/// Largest real part in the spectrum; the Perron root for primitive input.
pub fn oracle_rho<T: Scalar>(a: &DenseMatrix<T>) -> Result<f64> {
    Ok(eig_oracle(a)?[0].re)
}
