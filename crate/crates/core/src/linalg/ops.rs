use super::{DenseMatrix, Scalar};
use crate::error::{Error, Result};

/// Allowed deviation from unit norm before a Rayleigh quotient is refused.
pub const NORMALIZATION_SLACK: f64 = 1e-12;

/// Extremes of the componentwise ratio `(Aw)_j / w_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioStats {
    pub min: f64,
    pub max: f64,
    /// Lowest index attaining `min`.
    pub argmin: usize,
    /// Lowest index attaining `max`.
    pub argmax: usize,
}

impl RatioStats {
    /// Ratio statistics of a precomputed image `aw = A w`.
    pub fn from_image(aw: &[f64], w: &[f64]) -> Result<Self> {
        if aw.len() != w.len() {
            return Err(Error::DimensionMismatch { expected: w.len(), found: aw.len() });
        }
        if w.is_empty() {
            return Err(Error::Empty);
        }
        let mut s = RatioStats { min: f64::INFINITY, max: f64::NEG_INFINITY, argmin: 0, argmax: 0 };
        for (j, (&num, &den)) in aw.iter().zip(w).enumerate() {
            if den == 0.0 {
                return Err(Error::ZeroComponent { index: j });
            }
            let r = num / den;
            if r < s.min {
                s.min = r;
                s.argmin = j;
            }
            if r > s.max {
                s.max = r;
                s.argmax = j;
            }
        }
        Ok(s)
    }
}

/// `min_j` and `max_j` of `(Aw)_j / w_j`.
pub fn ratio_stats(a: &DenseMatrix<f64>, w: &[f64]) -> Result<RatioStats> {
    let aw = a.matvec(w)?;
    RatioStats::from_image(&aw, w)
}

/// `sqrt(sum mu_i |v_i|^2)`.
pub fn weighted_norm<T: Scalar>(v: &[T], mu: &[f64]) -> Result<f64> {
    if v.len() != mu.len() {
        return Err(Error::DimensionMismatch { expected: mu.len(), found: v.len() });
    }
    if let Some(i) = mu.iter().position(|&m| !(m > 0.0)) {
        return Err(Error::NonpositiveWeight { index: i });
    }
    Ok(v.iter().zip(mu).map(|(x, m)| m * x.modulus().powi(2)).sum::<f64>().sqrt())
}

pub fn euclidean_norm<T: Scalar>(v: &[T]) -> f64 {
    v.iter().map(|x| x.modulus().powi(2)).sum::<f64>().sqrt()
}

/// `sum mu_i conj(u_i) v_i`, or the plain Hermitian product when `mu` is absent.
pub(crate) fn inner<T: Scalar>(u: &[T], v: &[T], mu: Option<&[f64]>) -> T {
    match mu {
        Some(mu) => u
            .iter()
            .zip(v)
            .zip(mu)
            .fold(T::zero(), |acc, ((&x, &y), &m)| acc + T::from_real(m) * x.conj() * y),
        None => u.iter().zip(v).fold(T::zero(), |acc, (&x, &y)| acc + x.conj() * y),
    }
}

/// Rayleigh quotient `v* A v` (weighted: `sum mu_i conj(v_i) (Av)_i`).
///
/// `v` must already be unit length in the matching norm.
pub fn rayleigh_quotient<T: Scalar>(a: &DenseMatrix<T>, v: &[T], mu: Option<&[f64]>) -> Result<T> {
    let norm = match mu {
        Some(mu) => weighted_norm(v, mu)?,
        None => euclidean_norm(v),
    };
    if (norm - 1.0).abs() > NORMALIZATION_SLACK {
        return Err(Error::NotNormalized { norm });
    }
    let av = a.matvec(v)?;
    Ok(inner(v, &av, mu))
}
