//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p maxpair-core --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use maxpair_core::linalg::{thomas_solve, RatioStats};
use maxpair_core::models::{
    branching_q, example1, example18, example6, example9, single_birth_q, ARule, BranchingSpec, SingleBirthSpec,
};
use maxpair_core::pipeline::{compute_h, compute_mu_phi, h_transform};
use maxpair_core::{
    algorithm17, eig_oracle, rqi_nonneg, rqi_q, shift_tridiagonal, sii_complex, sii_nonneg, sii_q, Complex64,
    Eigenpair, IterationConfig, StopRule, Variant,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TABLE8_TOL: f64 = 5e-4;
const TABLE9_TOL: f64 = 5e-4;
const TABLE12_TOL: f64 = 5e-6;
const TABLE4_TOL: f64 = 5e-6;
const TABLE67_TOL: f64 = 5e-6;
const TABLE10_FINAL_TOL: f64 = 5e-6;
const TABLE10_ENTRY_TOL: f64 = 5e-5;
const H_REL_TOL: f64 = 5e-6;
const MONOTONE_SLACK: f64 = 1e-10;
const ISOSPECTRAL_TOL: f64 = 1e-9;
const DELTA_TOL: f64 = 1e-10;
const COMPLEMENT_TOL: f64 = 1e-8;
const SEED: u64 = 0x5eed_2017;

type Check = Result<(), String>;

fn expect(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Printed entries against a computed sequence; the run may take extra steps.
fn column(label: &str, got: &[f64], printed: &[f64], tol: f64) -> Check {
    expect(got.len() >= printed.len(), || format!("{label}: {} steps, printed {}", got.len(), printed.len()))?;
    for (k, (g, p)) in got.iter().zip(printed).enumerate() {
        expect((g - p).abs() <= tol, || format!("{label}: z{} = {g:.9} vs printed {p}", k + 1))?;
    }
    Ok(())
}

fn within_count(label: &str, p: &Eigenpair<f64>, printed: usize) -> Check {
    let s = p.solves();
    expect(s <= printed + 1, || format!("{label}: {s} solves, printed {printed}"))
}

fn ac1() -> Check {
    let a = example6().map_err(|e| e.to_string())?;
    let cfg = IterationConfig::default();
    let sii = sii_nonneg(&a, &cfg).map_err(|e| e.to_string())?;
    let rqi = rqi_nonneg(&a, &cfg).map_err(|e| e.to_string())?;
    column("sii", &sii.trace.shifts(), &[18.5316, 17.5416, 17.5124], TABLE8_TOL)?;
    column("rqi", &rqi.trace.shifts(), &[17.3772, 17.5124], TABLE8_TOL)
}

fn ac2() -> Check {
    let p = sii_complex(&example9().map_err(|e| e.to_string())?, &IterationConfig::default())
        .map_err(|e| e.to_string())?;
    let printed = [Complex64::new(3.03949, -0.0451599), Complex64::new(3.00471, -0.0015769), Complex64::new(3.0, 0.0)];
    let ys: Vec<Complex64> = p.trace.steps.iter().skip(1).map(|s| s.y).collect();
    expect(ys.len() >= 3, || format!("only {} steps", ys.len()))?;
    for (k, (y, q)) in ys.iter().zip(&printed).enumerate() {
        expect((y.re - q.re).abs() <= TABLE9_TOL && (y.im - q.im).abs() <= TABLE9_TOL, || {
            format!("y{} = {y} vs printed {q}", k + 1)
        })?;
    }
    expect(p.converged(), || format!("stopped with {:?}", p.trace.stop_reason))
}

fn ac3() -> Check {
    let cfg = IterationConfig::default().with_stop_rule(StopRule::ShiftDelta);
    let rqi_rows: [(f64, &[f64]); 4] = [
        (0.01, &[0.000278773, 0.000278686]),
        (1.0, &[0.0251531, 0.0245175]),
        (100.0, &[0.191729, 0.182822, 0.182819]),
        (1e4, &[0.201695, 0.195019, 0.195015]),
    ];
    let sii_rows: [(f64, &[f64]); 4] = [
        (0.01, &[0.000278637, 0.000278686]),
        (1.0, &[0.0241546, 0.0245175]),
        (100.0, &[0.168776, 0.18275, 0.182819]),
        (1e4, &[0.179525, 0.194932, 0.195015]),
    ];
    let finals = [0.000278686, 0.0245175, 0.182819, 0.195015];
    for (((b4, r), (_, s)), fin) in rqi_rows.iter().zip(&sii_rows).zip(finals) {
        let q = example1(*b4).map_err(|e| e.to_string())?;
        let pr = rqi_q(&q, &cfg).map_err(|e| e.to_string())?;
        let ps = sii_q(&q, &cfg).map_err(|e| e.to_string())?;
        column(&format!("rqi-q b4={b4}"), &pr.trace.shifts(), r, TABLE12_TOL)?;
        column(&format!("sii-q b4={b4}"), &ps.trace.shifts(), s, TABLE12_TOL)?;
        for (name, p) in [("rqi-q", &pr), ("sii-q", &ps)] {
            expect((p.value - fin).abs() <= TABLE12_TOL, || format!("{name} b4={b4}: final {} vs {fin}", p.value))?;
        }
    }
    Ok(())
}

fn ac4() -> Check {
    let rows: [(usize, &[f64]); 7] = [
        (8, &[0.276727, 0.427307, 0.451902, 0.452339]),
        (16, &[0.222132, 0.367827, 0.399959, 0.400910]),
        (32, &[0.187826, 0.329646, 0.370364, 0.372308, 0.372311]),
        (50, &[0.171657, 0.311197, 0.357814, 0.360776, 0.360784]),
        (100, &[0.152106, 0.287996, 0.343847, 0.349166, 0.349197]),
        (500, &[0.121403, 0.247450, 0.321751, 0.336811, 0.337186]),
        (1000, &[0.111879, 0.233257, 0.313274, 0.334155, 0.335009, 0.335010]),
    ];
    for (n, printed) in rows {
        let q = single_birth_q(SingleBirthSpec { n, rule: ARule::Reciprocal }).map_err(|e| e.to_string())?;
        let p = sii_q(&q, &IterationConfig::default()).map_err(|e| e.to_string())?;
        column(&format!("N={n}"), &p.trace.shifts(), printed, TABLE4_TOL)?;
        within_count(&format!("N={n}"), &p, printed.len())?;
        if n == 1000 {
            expect((p.value - 0.335010).abs() <= TABLE4_TOL, || format!("N=1000 final {}", p.value))?;
        }
    }
    Ok(())
}

fn ac5() -> Check {
    let cfg = IterationConfig::default();
    for (n, fin) in [(8, 0.0346310), (16, 0.00260088)] {
        let q = branching_q(BranchingSpec { n, alpha: 1.0 }).map_err(|e| e.to_string())?;
        let p = sii_q(&q, &cfg).map_err(|e| e.to_string())?;
        expect((p.value - fin).abs() <= TABLE67_TOL, || format!("alpha=1 N={n}: final {} vs {fin}", p.value))?;
    }
    let q = branching_q(BranchingSpec { n: 50, alpha: 1.0 }).map_err(|e| e.to_string())?;
    let z1 = sii_q(&q, &cfg).map_err(|e| e.to_string())?.trace.shifts()[0];
    expect(z1 < 1e-6, || format!("alpha=1 N=50: z1 = {z1}"))?;
    let convex = cfg.with_convex(0.69);
    for n in [8, 16, 50, 100, 500, 1000] {
        let q = branching_q(BranchingSpec { n, alpha: 1.75 }).map_err(|e| e.to_string())?;
        let p = sii_q(&q, &convex).map_err(|e| e.to_string())?;
        expect(p.solves() <= 4, || format!("alpha=7/4 N={n}: {} solves", p.solves()))?;
        if n >= 50 {
            expect((p.value - 0.625).abs() <= TABLE67_TOL, || format!("alpha=7/4 N={n}: final {}", p.value))?;
        }
    }
    Ok(())
}

fn ac6() -> Check {
    let a = example18().map_err(|e| e.to_string())?;
    let cfg = IterationConfig::default();
    let rqi = rqi_nonneg(&a, &cfg).map_err(|e| e.to_string())?;
    let sii = sii_nonneg(&a, &cfg).map_err(|e| e.to_string())?;
    let (q, m) = shift_tridiagonal(&a).map_err(|e| e.to_string())?;
    let ra = algorithm17(&q, m, Variant::A, &cfg).map_err(|e| e.to_string())?;
    let rb = algorithm17(&q, m, Variant::B, &cfg).map_err(|e| e.to_string())?;
    let runs: [(&str, Vec<f64>, f64, usize, &[f64]); 4] = [
        ("Algorithm 1", rqi.trace.shifts(), rqi.value, rqi.solves(), &[3.30193, 3.26737, 3.26754, 3.26753]),
        ("Algorithm 2", sii.trace.shifts(), sii.value, sii.solves(), &[3.64033, 3.32623, 3.26937, 3.26756, 3.26753]),
        ("17a", ra.rho_sequence(), ra.rho_a, ra.eigenpair.solves(), &[3.2618, 3.26752, 3.26753]),
        ("17b", rb.rho_sequence(), rb.rho_a, rb.eigenpair.solves(), &[3.27947, 3.2685, 3.26754, 3.26753]),
    ];
    for (name, seq, value, solves, printed) in runs {
        column(name, &seq, printed, TABLE10_ENTRY_TOL)?;
        expect((value - 3.26753).abs() <= TABLE10_FINAL_TOL, || format!("{name}: final {value}"))?;
        expect(solves.abs_diff(printed.len()) <= 1, || format!("{name}: {solves} solves, printed {}", printed.len()))?;
    }
    let printed_h = [2.12347, 29.3339, 453.284, 924.514, 24961.0];
    for (k, (h, p)) in ra.h.h[1..].iter().zip(printed_h).enumerate() {
        expect(((h - p) / p).abs() <= H_REL_TOL, || format!("h_{} = {h} vs printed {p}", k + 1))?;
    }
    Ok(())
}

fn ac7a(rng: &mut ChaCha8Rng) -> Check {
    let cfg = IterationConfig::default();
    for case in 0..200 {
        let n = rng.gen_range(2..=10);
        let a = common::random_primitive(rng, n);
        let rho = eig_oracle(&a).map_err(|e| e.to_string())?[0].re;
        let p = sii_nonneg(&a, &cfg).map_err(|e| format!("case {case} sii: {e}"))?;
        let steps = &p.trace.steps;
        for (k, w) in steps.windows(2).enumerate() {
            let slack = MONOTONE_SLACK * (1.0 + rho.abs());
            expect(w[1].z <= w[0].z + slack && w[1].x >= w[0].x - slack, || {
                format!("case {case} sii step {}: z {} -> {}, x {} -> {}", k + 1, w[0].z, w[1].z, w[0].x, w[1].x)
            })?;
        }
        for s in steps {
            let slack = MONOTONE_SLACK * (1.0 + rho.abs());
            expect(s.x <= rho + slack && rho <= s.z + slack, || format!("case {case}: {} <= {rho} <= {}", s.x, s.z))?;
            expect(s.v.iter().all(|&x| x > 0.0), || format!("case {case}: nonpositive iterate at step {}", s.n))?;
        }

        let m = a.row_sums().into_iter().fold(f64::NEG_INFINITY, f64::max);
        let q = a.shifted(-m);
        let lambda = m - rho;
        let p = sii_q(&q, &cfg).map_err(|e| format!("case {case} sii-q: {e}"))?;
        let steps = &p.trace.steps;
        let slack = MONOTONE_SLACK * (1.0 + m);
        for (k, w) in steps.windows(2).enumerate() {
            expect(w[1].z >= w[0].z - slack && w[1].y <= w[0].y + slack, || {
                format!("case {case} sii-q step {}: z {} -> {}, y {} -> {}", k + 1, w[0].z, w[1].z, w[0].y, w[1].y)
            })?;
        }
        for s in steps {
            expect(s.z <= lambda + slack && lambda <= s.y + slack, || {
                format!("case {case} sii-q: {} <= {lambda} <= {}", s.z, s.y)
            })?;
            expect(s.v.iter().all(|&x| x > 0.0), || format!("case {case}: nonpositive Q iterate"))?;
        }
    }
    Ok(())
}

fn ac7b(rng: &mut ChaCha8Rng) -> Check {
    for case in 0..100 {
        let n = rng.gen_range(1..=8);
        let q = common::random_tridiagonal_q(rng, n);
        let qt = h_transform(&q, &compute_h(&q).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let s1 = eig_oracle(&q.to_dense()).map_err(|e| e.to_string())?;
        let s2 = eig_oracle(&qt.to_dense()).map_err(|e| e.to_string())?;
        for (x, y) in s1.iter().zip(&s2) {
            expect((x - y).norm() <= ISOSPECTRAL_TOL, || format!("case {case}: {x} vs {y}"))?;
        }
    }
    Ok(())
}

fn ac7c(rng: &mut ChaCha8Rng) -> Check {
    let cfg = IterationConfig::default();
    for case in 0..50 {
        let n = rng.gen_range(1..=8);
        let q = common::random_tridiagonal_q(rng, n);
        let lambda = common::lambda_min(&q.to_dense());
        let r = algorithm17(&q, 0.0, Variant::B, &cfg).map_err(|e| format!("case {case}: {e}"))?;
        let slack = DELTA_TOL * (1.0 + lambda);
        for s in &r.eigenpair.trace.steps {
            expect(s.z <= lambda + slack && lambda <= s.y + slack, || {
                format!("case {case} step {}: {} <= {lambda} <= {}", s.n, s.z, s.y)
            })?;
        }
    }
    Ok(())
}

fn ac7d(rng: &mut ChaCha8Rng) -> Check {
    for case in 0..50 {
        let n = rng.gen_range(1..=50);
        let q = common::random_tridiagonal_q(rng, n);
        let qt = h_transform(&q, &compute_h(&q).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let mp = compute_mu_phi(&qt).map_err(|e| e.to_string())?;
        let neg = qt.to_tridiagonal().negated();
        let v: Vec<f64> = mp.phi.iter().map(|p| p.sqrt()).collect();
        let w = thomas_solve(&neg, &v).map_err(|e| e.to_string())?;
        let lo = RatioStats::from_image(&neg.matvec(&w).map_err(|e| e.to_string())?, &w)
            .map_err(|e| e.to_string())?
            .min;
        let target = 1.0 / mp.delta1;
        expect(((lo - target) / target).abs() <= DELTA_TOL, || format!("case {case} N={n}: {lo} vs {target}"))?;
    }
    Ok(())
}

fn ac7e(rng: &mut ChaCha8Rng) -> Check {
    let cfg = IterationConfig::default().with_tol(1e-10).with_stop_rule(StopRule::ShiftDelta);
    for case in 0..50 {
        let n = rng.gen_range(2..=8);
        let q = common::random_q(rng, n);
        let m = (0..n).map(|i| -q.get(i, i)).fold(0.0, f64::max);
        let a = q.shifted(m);
        let vq = sii_q(&q, &cfg).map_err(|e| format!("case {case} sii-q: {e}"))?.value;
        let va = sii_nonneg(&a, &cfg).map_err(|e| format!("case {case} sii: {e}"))?.value;
        expect((vq + va - m).abs() <= COMPLEMENT_TOL, || format!("case {case}: {vq} + {va} vs m = {m}"))?;
    }
    Ok(())
}

fn ac7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let parts: [(&str, fn(&mut ChaCha8Rng) -> Check); 5] = [
        ("monotonicity/bracketing", ac7a),
        ("isospectrality", ac7b),
        ("delta bracket", ac7c),
        ("first-step bound", ac7d),
        ("complementarity", ac7e),
    ];
    for (name, f) in parts {
        f(&mut rng).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, Duration, fn() -> Check); 7] = [
        ("AC1", "table id 8: real matrix with negative entries", Duration::from_millis(100), ac1),
        ("AC2", "table id 9: complex matrix", Duration::from_millis(100), ac2),
        ("AC3", "table ids 1-2: five-state Q-matrix", Duration::from_millis(100), ac3),
        ("AC4", "table id 4: single-birth Q up to N = 1000", Duration::from_secs(60), ac4),
        ("AC5", "table ids 6-7: branching Q", Duration::from_secs(60), ac5),
        ("AC6", "table id 10: four algorithms on a tridiagonal matrix", Duration::from_secs(1), ac6),
        ("AC7", "property suite", Duration::from_secs(120), ac7),
    ];
    let mut failed = 0;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            expect(elapsed <= budget, || format!("took {:.3} s, budget {:.3} s", elapsed.as_secs_f64(), budget.as_secs_f64()))
        });
        match outcome {
            Ok(()) => println!("{id} PASS {name} ({:.3} s)", elapsed.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("{id} FAIL {name} ({:.3} s): {e}", elapsed.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
