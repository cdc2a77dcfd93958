//! The `table` subcommand: rerun the reference experiments.
//!
//! Each table is a list of independent runs evaluated in parallel; output
//! order follows the table, not completion order. Iterate columns are
//! shown to six significant digits and trailing entries that repeat the
//! previous one at that precision are left blank.

use maxpair_core::models::{
    branching_q, example1, example18, example6, example9, single_birth_q, ARule, BranchingSpec, SingleBirthSpec,
    EXAMPLE1_B4,
};
use maxpair_core::{
    algorithm17, rqi_nonneg, rqi_q, shift_tridiagonal, sii_complex, sii_nonneg, sii_q, Complex64, IterationConfig,
    StopRule, Variant,
};
use rayon::prelude::*;

use crate::error::{CliError, Result};
use crate::format::sig6;

pub const DEFAULT_MAX_N: usize = 1000;

/// Model sizes of the single-birth and branching tables.
const SINGLE_BIRTH_SIZES: [usize; 9] = [8, 16, 32, 50, 100, 500, 1000, 5000, 10_000];
const SUPERCRITICAL_SIZES: [usize; 6] = [8, 16, 50, 100, 500, 1000];
const SUBCRITICAL_SIZES: [usize; 8] = [8, 16, 50, 100, 500, 1000, 5000, 10_000];
const CONVEX_XI: f64 = 0.69;

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    /// Rows are padded with empty cells to the header width.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            let mut cells = row.clone();
            cells.resize(self.header.len(), String::new());
            w.write_record(&cells)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

/// Six-digit cells with converged repeats dropped.
pub fn displayed(seq: &[f64]) -> Vec<String> {
    let mut cells: Vec<String> = Vec::with_capacity(seq.len());
    for x in seq {
        let cell = sig6(*x);
        if cells.last() == Some(&cell) {
            break;
        }
        cells.push(cell);
    }
    cells
}

fn labelled(rows: Vec<(String, Vec<String>)>, label: &str) -> Table {
    let width = rows.iter().map(|(_, c)| c.len()).max().unwrap_or(0);
    let mut header = vec![label.to_string()];
    header.extend((1..=width).map(|k| format!("z{k}")));
    let rows = rows
        .into_iter()
        .map(|(l, cells)| std::iter::once(l).chain(cells).collect())
        .collect();
    Table { header, rows }
}

fn example1_table(rqi: bool) -> Result<Table> {
    let cfg = IterationConfig::default().with_stop_rule(StopRule::ShiftDelta);
    let rows = EXAMPLE1_B4
        .par_iter()
        .map(|&b4| {
            let q = example1(b4)?;
            let p = if rqi { rqi_q(&q, &cfg)? } else { sii_q(&q, &cfg)? };
            Ok((format!("{b4}"), displayed(&p.trace.shifts())))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(labelled(rows, "b4"))
}

fn sized_table(sizes: &[usize], max_n: usize, run: impl Fn(usize) -> Result<Vec<f64>> + Sync) -> Result<Table> {
    let rows = sizes
        .par_iter()
        .filter(|&&n| n <= max_n)
        .map(|&n| Ok((n.to_string(), displayed(&run(n)?))))
        .collect::<Result<Vec<_>>>()?;
    Ok(labelled(rows, "N"))
}

fn table8() -> Result<Table> {
    let a = example6()?;
    let cfg = IterationConfig::default();
    let (rqi, sii) = rayon::join(|| rqi_nonneg(&a, &cfg), || sii_nonneg(&a, &cfg));
    let (rqi, sii) = (displayed(&rqi?.trace.shifts()), displayed(&sii?.trace.shifts()));
    let rows = (0..rqi.len().max(sii.len()))
        .map(|k| {
            vec![
                (k + 1).to_string(),
                rqi.get(k).cloned().unwrap_or_default(),
                sii.get(k).cloned().unwrap_or_default(),
            ]
        })
        .collect();
    Ok(Table { header: vec!["n".into(), "algorithm_1".into(), "algorithm_2".into()], rows })
}

fn table9() -> Result<Table> {
    let p = sii_complex(&example9()?, &IterationConfig::default())?;
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut prev: Option<Complex64> = None;
    for s in p.trace.steps.iter().skip(1) {
        // Repeats are judged on the modulus, at six digits of |y|.
        if prev.is_some_and(|q| (s.y - q).norm() < 5e-6 * s.y.norm()) {
            break;
        }
        prev = Some(s.y);
        rows.push(vec![s.n.to_string(), sig6(s.y.re), sig6(s.y.im)]);
    }
    Ok(Table { header: vec!["n".into(), "y_re".into(), "y_im".into()], rows })
}

fn table10() -> Result<Table> {
    let a = example18()?;
    let cfg = IterationConfig::default();
    let (q, m) = shift_tridiagonal(&a)?;
    let runs: [(&str, u8); 4] = [("algorithm_1", 0), ("algorithm_2", 1), ("algorithm_17a", 2), ("algorithm_17b", 3)];
    let rows = runs
        .par_iter()
        .map(|&(name, which)| {
            let seq = match which {
                0 => rqi_nonneg(&a, &cfg)?.trace.shifts(),
                1 => sii_nonneg(&a, &cfg)?.trace.shifts(),
                2 => algorithm17(&q, m, Variant::A, &cfg)?.rho_sequence(),
                _ => algorithm17(&q, m, Variant::B, &cfg)?.rho_sequence(),
            };
            Ok((name.to_string(), displayed(&seq)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(labelled(rows, "algorithm"))
}

/// Regenerates table `id`. Sizes above `max_n` are skipped.
pub fn table(id: u32, max_n: usize) -> Result<Table> {
    let cfg = IterationConfig::default();
    match id {
        1 => example1_table(true),
        2 => example1_table(false),
        4 => sized_table(&SINGLE_BIRTH_SIZES, max_n, |n| {
            Ok(sii_q(&single_birth_q(SingleBirthSpec { n, rule: ARule::Reciprocal })?, &cfg)?.trace.shifts())
        }),
        6 => sized_table(&SUPERCRITICAL_SIZES, max_n, |n| {
            Ok(sii_q(&branching_q(BranchingSpec { n, alpha: 1.0 })?, &cfg)?.trace.shifts())
        }),
        7 => sized_table(&SUBCRITICAL_SIZES, max_n, |n| {
            let q = branching_q(BranchingSpec { n, alpha: 1.75 })?;
            Ok(sii_q(&q, &cfg.with_convex(CONVEX_XI))?.trace.shifts())
        }),
        8 => table8(),
        9 => table9(),
        10 => table10(),
        3 | 5 => Err(CliError::BadInput(format!(
            "table {id} comes from a different algorithm that this tool does not implement"
        ))),
        other => Err(CliError::BadInput(format!("no table with id {other}; valid ids are 1-10"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repeats_are_blanked() {
        assert_eq!(displayed(&[0.1, 0.2000001, 0.2000002]), vec!["0.100000", "0.200000"]);
        assert_eq!(displayed(&[]), Vec::<String>::new());
    }

    #[test]
    fn table10_matches_print() {
        let t = table(10, DEFAULT_MAX_N).unwrap();
        assert_eq!(t.rows[0], vec!["algorithm_1", "3.30193", "3.26737", "3.26754", "3.26753"]);
        assert_eq!(t.rows[2], vec!["algorithm_17a", "3.26180", "3.26752", "3.26753"]);
        assert_eq!(t.rows[3], vec!["algorithm_17b", "3.27947", "3.26850", "3.26754", "3.26753"]);
    }

    #[test]
    fn table1_rows() {
        let t = table(1, DEFAULT_MAX_N).unwrap();
        assert_eq!(t.header, vec!["b4", "z1", "z2", "z3"]);
        assert_eq!(t.rows[2], vec!["100", "0.191729", "0.182822", "0.182819"]);
        let csv = t.to_csv().unwrap();
        assert!(csv.contains("\n1,0.0251531,0.0245175,\n"), "{csv}");
    }

    #[test]
    fn table9_stops_at_converged_value() {
        let t = table(9, DEFAULT_MAX_N).unwrap();
        assert_eq!(t.rows.len(), 4);
        assert_eq!(t.rows[0], vec!["1", "3.03949", "-0.0451599"]);
        assert_eq!(t.rows[1], vec!["2", "3.00471", "-0.00157690"]);
    }

    #[test]
    fn max_n_caps_sizes() {
        let t = table(4, 50).unwrap();
        let sizes: Vec<&str> = t.rows.iter().map(|r| r[0].as_str()).collect();
        assert_eq!(sizes, vec!["8", "16", "32", "50"]);
    }

    #[test]
    fn unsupported_ids() {
        for id in [0, 3, 5, 11] {
            assert_eq!(table(id, DEFAULT_MAX_N).unwrap_err().exit_code(), 1);
        }
    }
}
