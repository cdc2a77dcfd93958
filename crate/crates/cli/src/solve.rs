//! The `solve` subcommand: run one engine on one matrix.

use maxpair_core::{
    algorithm17, rqi_nonneg, rqi_q, shift_tridiagonal, sii_complex, sii_nonneg, sii_q, AlgorithmId,
    Eigenpair, IterationConfig, Scalar, StopReason, StopRule, Variant,
};
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::format::{json_f64, json_f64_vec, sig17};
use crate::matrix_file::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub algorithm: AlgorithmId,
    pub tol: f64,
    pub max_iter: usize,
    /// Selects the blended initial shift for the `sii` engines.
    pub xi: Option<f64>,
    pub stop_rule: Option<StopRule>,
}

impl SolveOptions {
    pub fn config(&self) -> IterationConfig {
        let mut cfg = IterationConfig::default().with_tol(self.tol).with_max_iter(self.max_iter);
        if let Some(xi) = self.xi {
            cfg = cfg.with_convex(xi);
        }
        if let Some(rule) = self.stop_rule {
            cfg = cfg.with_stop_rule(rule);
        }
        cfg
    }
}

/// One serialized iteration step.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceRecord {
    pub n: usize,
    #[serde(serialize_with = "json_f64")]
    pub x: f64,
    #[serde(serialize_with = "json_f64")]
    pub y_re: f64,
    #[serde(serialize_with = "json_f64")]
    pub y_im: f64,
    #[serde(serialize_with = "json_f64")]
    pub z: f64,
    /// Set on the final record only.
    pub stop_reason: Option<&'static str>,
    /// Solves performed up to and including this step.
    pub solves: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub algorithm: &'static str,
    pub stop_reason: &'static str,
    pub solves: usize,
    #[serde(serialize_with = "json_f64")]
    pub value_re: f64,
    #[serde(serialize_with = "json_f64")]
    pub value_im: f64,
    #[serde(serialize_with = "json_f64_vec")]
    pub vector_re: Vec<f64>,
    #[serde(serialize_with = "json_f64_vec")]
    pub vector_im: Vec<f64>,
    /// Shift `m` used to bring a dense tridiagonal input into Q form.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<Shift>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_vec")]
    pub g: Option<Vec<f64>>,
    pub trace: Vec<TraceRecord>,
    #[serde(skip)]
    stop: Option<StopReason>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Shift(#[serde(serialize_with = "json_f64")] pub f64);

fn opt_vec<S: serde::Serializer>(v: &Option<Vec<f64>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    json_f64_vec(v.as_deref().unwrap_or_default(), s)
}

impl SolveReport {
    fn from_pair<T: Scalar>(p: &Eigenpair<T>) -> Self {
        let trace = &p.trace;
        let last = trace.steps.len() - 1;
        let records = trace
            .steps
            .iter()
            .enumerate()
            .map(|(i, s)| TraceRecord {
                n: s.n,
                x: s.x,
                y_re: s.y.re(),
                y_im: s.y.im(),
                z: s.z,
                stop_reason: (i == last).then(|| trace.stop_reason.as_str()),
                solves: s.n,
            })
            .collect();
        SolveReport {
            algorithm: p.algorithm.as_str(),
            stop_reason: trace.stop_reason.as_str(),
            solves: trace.solves_performed,
            value_re: p.value.re(),
            value_im: p.value.im(),
            vector_re: p.vector.iter().map(|x| x.re()).collect(),
            vector_im: p.vector.iter().map(|x| x.im()).collect(),
            m: None,
            g: None,
            trace: records,
            stop: Some(trace.stop_reason),
        }
    }

    /// 0 on convergence, 2 when the iteration cap was hit, 3 on a singular stop.
    pub fn exit_code(&self) -> u8 {
        match self.stop {
            Some(StopReason::ConvergedGap | StopReason::ConvergedDelta) => 0,
            Some(StopReason::MaxIter) => 2,
            Some(StopReason::SingularStop) | None => 3,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// Trace table, a blank line, then the final eigenpair as `quantity,re,im`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "x", "y_re", "y_im", "z", "stop_reason", "solves"])?;
        for r in &self.trace {
            w.write_record([
                r.n.to_string(),
                sig17(r.x),
                sig17(r.y_re),
                sig17(r.y_im),
                sig17(r.z),
                r.stop_reason.unwrap_or_default().to_string(),
                r.solves.to_string(),
            ])?;
        }
        let mut out = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        out.push(b'\n');
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["quantity", "re", "im"])?;
        w.write_record(["value".to_string(), sig17(self.value_re), sig17(self.value_im)])?;
        if let Some(Shift(m)) = self.m {
            w.write_record(["m".to_string(), sig17(m), sig17(0.0)])?;
        }
        for (i, (re, im)) in self.vector_re.iter().zip(&self.vector_im).enumerate() {
            w.write_record([format!("v{i}"), sig17(*re), sig17(*im)])?;
        }
        for (i, g) in self.g.iter().flatten().enumerate() {
            w.write_record([format!("g{i}"), sig17(*g), sig17(0.0)])?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

fn wrong_kind(alg: AlgorithmId, what: &str) -> CliError {
    CliError::BadInput(format!("algorithm `{}` does not accept {what} input", alg.as_str()))
}

/// Runs the requested engine. Engines in Q form read a tridiagonal file as
/// the Q-matrix it describes; `tri17a`/`tri17b` on a dense file shift it
/// into Q form first and report `ρ(A)` and the eigenvector of `A`.
pub fn run(matrix: &Matrix, opts: &SolveOptions) -> Result<SolveReport> {
    let cfg = opts.config();
    let alg = opts.algorithm;
    let report = match (alg, matrix) {
        (AlgorithmId::Rqi, Matrix::Real(a)) => SolveReport::from_pair(&rqi_nonneg(a, &cfg)?),
        (AlgorithmId::Sii, Matrix::Real(a)) => SolveReport::from_pair(&sii_nonneg(a, &cfg)?),
        (AlgorithmId::RqiQ, Matrix::Real(q)) => SolveReport::from_pair(&rqi_q(q, &cfg)?),
        (AlgorithmId::RqiQ, Matrix::Tridiagonal(q)) => SolveReport::from_pair(&rqi_q(&q.to_dense(), &cfg)?),
        (AlgorithmId::SiiQ, Matrix::Real(q)) => SolveReport::from_pair(&sii_q(q, &cfg)?),
        (AlgorithmId::SiiQ, Matrix::Tridiagonal(q)) => SolveReport::from_pair(&sii_q(&q.to_dense(), &cfg)?),
        (AlgorithmId::SiiComplex, Matrix::Complex(a)) => SolveReport::from_pair(&sii_complex(a, &cfg)?),
        (AlgorithmId::SiiComplex, Matrix::Real(a)) => SolveReport::from_pair(&sii_complex(&a.to_complex(), &cfg)?),
        (AlgorithmId::Tri17a | AlgorithmId::Tri17b, m @ (Matrix::Real(_) | Matrix::Tridiagonal(_))) => {
            let variant = if alg == AlgorithmId::Tri17a { Variant::A } else { Variant::B };
            match m {
                Matrix::Real(a) => {
                    let (q, shift) = shift_tridiagonal(a)?;
                    let r = algorithm17(&q, shift, variant, &cfg)?;
                    let mut report = SolveReport::from_pair(&r.eigenpair);
                    report.value_re = r.rho_a;
                    report.vector_re = r.g.clone();
                    report.m = Some(Shift(shift));
                    report.g = Some(r.g);
                    report
                }
                Matrix::Tridiagonal(q) => {
                    let r = algorithm17(q, 0.0, variant, &cfg)?;
                    let mut report = SolveReport::from_pair(&r.eigenpair);
                    report.g = Some(r.g);
                    report
                }
                Matrix::Complex(_) => unreachable!("matched above"),
            }
        }
        (_, Matrix::Complex(_)) => return Err(wrong_kind(alg, "complex")),
        (_, Matrix::Tridiagonal(_)) => return Err(wrong_kind(alg, "tridiagonal Q-matrix")),
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use maxpair_core::models::{example18, example6};
    use maxpair_core::DenseMatrix;

    use super::*;

    fn opts(algorithm: AlgorithmId) -> SolveOptions {
        SolveOptions { algorithm, tol: 1e-6, max_iter: 100, xi: None, stop_rule: None }
    }

    #[test]
    fn sii_on_example6() {
        let r = run(&Matrix::Real(example6().unwrap()), &opts(AlgorithmId::Sii)).unwrap();
        assert!((r.value_re - 17.5124).abs() < 1e-4);
        assert_eq!(r.exit_code(), 0);
        assert_eq!(r.trace.last().unwrap().stop_reason, Some("converged_gap"));
        assert_eq!(r.trace[0].stop_reason, None);
    }

    #[test]
    fn tri17_on_dense_reports_rho() {
        let r = run(&Matrix::Real(example18().unwrap()), &opts(AlgorithmId::Tri17a)).unwrap();
        assert!((r.value_re - 3.26753).abs() < 5e-6);
        assert!(r.m.is_some());
    }

    #[test]
    fn one_by_one_short_circuits() {
        let r = run(&Matrix::Real(DenseMatrix::from_rows(&[[5.0]]).unwrap()), &opts(AlgorithmId::Rqi)).unwrap();
        assert_eq!(r.value_re, 5.0);
        assert_eq!(r.solves, 0);
    }

    #[test]
    fn max_iter_exit_code() {
        let mut o = opts(AlgorithmId::Sii);
        o.max_iter = 1;
        let r = run(&Matrix::Real(example6().unwrap()), &o).unwrap();
        assert_eq!(r.exit_code(), 2);
    }

    #[test]
    fn csv_has_both_blocks() {
        let r = run(&Matrix::Real(example6().unwrap()), &opts(AlgorithmId::Rqi)).unwrap();
        let csv = r.to_csv().unwrap();
        assert!(csv.starts_with("n,x,y_re,y_im,z,stop_reason,solves\n"));
        assert!(csv.contains("\n\nquantity,re,im\nvalue,"));
    }

    #[test]
    fn kind_mismatch_is_bad_input() {
        let c = Matrix::Complex(example6().unwrap().to_complex());
        assert_eq!(run(&c, &opts(AlgorithmId::Sii)).unwrap_err().exit_code(), 1);
    }
}
