//! Acceptance suite. Each test prints one `PASS`/`FAIL` line straight to
//! stderr (bypassing the test harness capture) and then asserts.
//!
//! Criterion 1 has two table entries that cannot be met; that test prints
//! `FAIL` and only panics if anything other than those two entries fails.

use std::io::Write;
use std::time::Instant;

use sixbeam::coefficients::operator_matrix;
use sixbeam::eigenbasis::{eigenvalue_asymptotic, solve_eigenvalue};
use sixbeam::fit::decay;
use sixbeam::galerkin::{solve_steady, steady_matrix, theta_factor};
use sixbeam::oracle;
use sixbeam::{Basis, BvpSpec, OperatorKind, Parity};
use sixbeam_cli::config::{ParityFilter, RunConfig};
use sixbeam_cli::evolve::{simulate, Dynamics};
use sixbeam_cli::{eigenvalues, solve, verify};

fn line(n: u32, name: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "criterion {n:>2} {verdict} [{name}] {detail}");
}

/// Table 1 as printed: `m, λ^c, (m+1/6)π, λ^s, (m-1/3)π`.
const TABLE: [(usize, f64, f64, f64, f64); 6] = [
    (1, 3.66606496814, 3.66519142919, 2.07175679767, 2.09439510239),
    (2, 6.80678029161, 6.80678408278, 5.23608751229, 5.23598775598),
    (3, 9.94837675280, 9.94837673637, 8.37757997731, 8.37758040957),
    (4, 13.0899693899, 13.0899693900, 11.5191730650, 11.5191730632),
    (5, 16.2315620436, 16.2315620435, 14.6607657167, 14.6607657168),
    (6, 19.3731546971, 19.3731546971, 17.8023583704, 17.8023583703),
];

/// Entries printed one unit off in the last place; the true roots are
/// 16.231562043547574 and 17.802358370342197.
const MISROUNDED: [&str; 2] = ["lambda_c[5]", "lambda_s[6]"];

#[test]
fn criterion_01_eigenvalue_table() {
    let start = Instant::now();
    let t = eigenvalues::table(6, ParityFilter::Both).unwrap();
    let secs = start.elapsed().as_secs_f64();
    assert_eq!(t.rows.len(), 7);
    assert_eq!(t.rows[0][1].as_f64(), Some(0.0));
    let names = ["lambda_c", "asymptotic_c", "lambda_s", "asymptotic_s"];
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    for (row, &(m, a, b, c, d)) in t.rows[1..].iter().zip(&TABLE) {
        assert_eq!(row[0].as_f64(), Some(m as f64));
        for (k, printed) in [a, b, c, d].into_iter().enumerate() {
            let got = row[k + 1].as_f64().unwrap();
            let err = (got - printed).abs();
            checked += 1;
            worst = worst.max(err);
            if err >= 5e-11 {
                failures.push((format!("{}[{m}]", names[k]), err));
            }
        }
    }
    let pass = failures.is_empty() && secs < 1.0;
    let detail = format!(
        "{}/{checked} entries within 5e-11 (worst {worst:.2e}){}; {secs:.3} s",
        checked - failures.len(),
        failures.iter().map(|(k, e)| format!(", {k} off by {e:.2e}")).collect::<String>()
    );
    line(1, "eigenvalue table", pass, &detail);
    assert!(secs < 1.0, "runtime {secs} s");
    let labels: Vec<&str> = failures.iter().map(|(k, _)| k.as_str()).collect();
    assert_eq!(labels, MISROUNDED, "unexpected table mismatches");
}

#[test]
fn criterion_02_asymptotic_agreement() {
    let c = (solve_eigenvalue(Parity::Even, 6).unwrap().lambda - eigenvalue_asymptotic(Parity::Even, 6).unwrap()).abs();
    let s = (solve_eigenvalue(Parity::Odd, 6).unwrap().lambda - eigenvalue_asymptotic(Parity::Odd, 6).unwrap()).abs();
    let pass = c < 1e-10 && s < 1e-9;
    line(2, "asymptotic agreement", pass, &format!("|Δλ_6^c| = {c:.2e}, |Δλ_6^s| = {s:.2e}"));
    assert!(pass);
}

#[test]
fn criterion_03_model_i() {
    let start = Instant::now();
    let out = solve::solve(&BvpSpec::model_i(), 100, 201, false).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let e = out.summary.max_error.unwrap();
    let pass = e <= solve::REQUIRED_TIER && secs < 5.0;
    line(
        3,
        "model I error",
        pass,
        &format!("max error {e:.3e}, {} tier met; {secs:.3} s", solve::tier(e)),
    );
    assert!(pass);
}

#[test]
fn criterion_04_model_ii() {
    let start = Instant::now();
    let out = solve::solve(&BvpSpec::model_ii(), 100, 201, false).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let e = out.summary.max_error.unwrap();
    let negative = out.summary.pivots_negative == Some(true);
    let pass = e <= solve::REQUIRED_TIER && negative && secs < 5.0;
    line(
        4,
        "model II error",
        pass,
        &format!(
            "max error {e:.3e}, {} tier met; {:?} path, all pivots negative: {negative}; {secs:.3} s",
            solve::tier(e),
            out.summary.solve_path
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_05_solution_decay() {
    let mut parts = Vec::new();
    let mut pass = true;
    for (name, spec) in [("I", BvpSpec::model_i()), ("II", BvpSpec::model_ii())] {
        let fit = solve::solve(&spec, 100, 3, false).unwrap().summary.decay_fit.unwrap();
        pass &= (-8.3..=-7.6).contains(&fit.exponent);
        parts.push(format!("model {name}: {:.1} n^{:.3}", fit.coefficient, fit.exponent));
    }
    line(5, "solution coefficient decay", pass, &parts.join(", "));
    assert!(pass);
}

#[test]
fn criterion_06_operator_decay() {
    let b = Basis::new(100).unwrap();
    let beta = operator_matrix(&b, Parity::Even, OperatorKind::SecondDerivative).unwrap();
    let gamma = operator_matrix(&b, Parity::Even, OperatorKind::FourthDerivative).unwrap();
    // the window m ∈ [50, 100] excludes the diagonals m = 5 and m = 3
    let fb = decay(&beta.row(5), 50, 100).unwrap();
    let fg = decay(&gamma.row(3), 50, 100).unwrap();
    let pass = (-2.2..=-1.7).contains(&fb.exponent) && (-3.3..=-2.7).contains(&fg.exponent);
    line(
        6,
        "operator coefficient decay",
        pass,
        &format!(
            "|β_5m| ≈ {:.1} m^{:.3}, |γ_3m| ≈ {:.1} m^{:.3}",
            fb.coefficient, fb.exponent, fg.coefficient, fg.exponent
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_07_orthonormality() {
    let b = Basis::new(30).unwrap();
    let mut gram: f64 = 0.0;
    let mut adj: f64 = 0.0;
    for p in [Parity::Even, Parity::Odd] {
        let g = oracle::gram(&b, p, 30).unwrap();
        gram = gram.max((g - nalgebra::DMatrix::<f64>::identity(30, 30)).amax());
        adj = adj.max(oracle::self_adjointness(&b, p, 15).unwrap());
    }
    let pass = gram < 1e-10 && adj < 1e-8;
    line(
        7,
        "orthonormality",
        pass,
        &format!("Gram deviation {gram:.2e} (30 modes/parity), self-adjointness {adj:.2e} (n, m ≤ 15)"),
    );
    assert!(pass);
}

#[test]
fn criterion_08_closed_forms_vs_oracle() {
    let start = Instant::now();
    let (s, summary) = verify::sweep(20, false).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let chi = s.reports.iter().filter(|r| r.p.is_some()).count();
    let pass = summary.pass && chi == 120 && secs < 30.0;
    line(
        8,
        "closed form / oracle",
        pass,
        &format!(
            "{} entries ({chi} χ), {} failed, worst {:.2e}; {} printed-form discrepancies documented; {secs:.1} s",
            summary.checked, summary.failed, summary.worst_discrepancy, summary.documented
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_09_semi_discrete() {
    // single even mode, B = T = 0, f = 0
    let decay_config = |dt: f64, steps: usize| {
        RunConfig::from_json(&format!(
            r#"{{"M": 10, "dt": {dt:e}, "steps": {steps}, "theta": 0.5, "initial": ["c1"]}}"#
        ))
        .unwrap()
    };
    let l6 = solve_eigenvalue(Parity::Even, 1).unwrap().lambda.powi(6);
    let dt = 1e-5;
    let out = simulate(&Dynamics::from_config(&decay_config(dt, 200)).unwrap(), false).unwrap();
    let g = theta_factor(l6, dt, 0.5);
    let step_err = out
        .states
        .windows(2)
        .map(|w| (w[1].uc[0] - g * w[0].uc[0]).abs())
        .fold(0.0, f64::max);
    let coupled = out
        .states
        .iter()
        .flat_map(|u| u.uc[1..].iter().chain(&u.us).chain([&u.u0c]))
        .fold(0.0f64, |a, v| a.max(v.abs()));

    let horizon = 1e-3;
    let err = |steps: usize| {
        let o = simulate(&Dynamics::from_config(&decay_config(horizon / steps as f64, steps)).unwrap(), false).unwrap();
        (o.states[steps].uc[0] - (-l6 * horizon).exp()).abs()
    };
    let ratio = err(40) / err(80);

    // steady model II forcing, implicit Euler to the fixed point
    let steady = RunConfig::from_json(r#"{"model": "II", "M": 40, "dt": 1e-5, "steps": 2000, "theta": 1.0, "initial": [], "track": []}"#)
        .unwrap();
    let o = simulate(&Dynamics::from_config(&steady).unwrap(), false).unwrap();
    let dev = o.summary.steady.unwrap().max_deviation.unwrap();

    let pass = step_err < 1e-14 && coupled == 0.0 && (3.8..=4.2).contains(&ratio) && dev < 1e-8;
    line(
        9,
        "semi-discrete system",
        pass,
        &format!(
            "per-step factor error {step_err:.1e}, other modes {coupled:.0e}; error ratio under dt halving {ratio:.3}; \
             steady deviation {dev:.2e}"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_10_overflow_robustness() {
    let b200 = Basis::new(200).unwrap();
    let audit = b200.audit().is_ok();
    let finite_modes = [Parity::Even, Parity::Odd]
        .iter()
        .flat_map(|&p| b200.modes(p))
        .all(|m| m.is_finite() && (0..=6).all(|k| m.eval(1.0, k).is_finite() && m.eval(0.3, k).is_finite()));
    let b150 = Basis::new(150).unwrap();
    let spec = BvpSpec::model_ii();
    let (a, _) = steady_matrix(&spec, &b150).unwrap();
    let matrix_finite = a.iter().all(|v| v.is_finite());
    let sol = solve_steady(&spec, &b150).unwrap();
    let solution_finite = sol.coeffs.is_finite() && sol.pivots.iter().all(|d| d.is_finite());
    let lambda = b200.mode(Parity::Even, 200).unwrap().lambda;
    let pass = audit && finite_modes && matrix_finite && solution_finite;
    line(
        10,
        "overflow robustness",
        pass,
        &format!(
            "M = 200 basis finite (λ_200 = {lambda:.1}, audit ok: {audit}); M = 150 model II matrix and solution finite: {}",
            matrix_finite && solution_finite
        ),
    );
    assert!(pass);
}
