use std::time::Instant;

use serde::Serialize;
use sixbeam::fit::{decay, PowerLaw};
use sixbeam::galerkin::{model_exact, solve_steady};
use sixbeam::linalg::SolvePath;
use sixbeam::{Basis, BvpSpec, CoefficientSet};

use crate::config::RunConfig;
use crate::output::{emit, write_json, Cell, Table};
use crate::{elapsed_ms, out_dir, CliError, Timings};

pub const REQUIRED_TIER: f64 = 1e-10;
pub const STRETCH_TIER: f64 = 5e-13;
/// First index of the decay fit window.
pub const FIT_FROM: usize = 50;

#[derive(Clone, Debug, Serialize)]
pub struct SolveSummary {
    pub command: &'static str,
    #[serde(rename = "M")]
    pub order: usize,
    pub model: Option<String>,
    pub spec: BvpSpec,
    pub solve_path: SolvePath,
    /// `None` when no LDLᵀ factorization was needed.
    pub pivots_negative: Option<bool>,
    pub u0c: f64,
    pub samples: usize,
    /// Only for the model problems, which have a known solution.
    pub max_error: Option<f64>,
    pub tier: Option<&'static str>,
    /// `|u_n^c| ≈ C n^p` over `n ∈ [50, M]`; absent when `M < 51`.
    pub decay_fit: Option<PowerLaw>,
    pub timings: Option<Timings>,
}

#[derive(Clone, Debug)]
pub struct SolveOutput {
    pub summary: SolveSummary,
    pub solution: Table,
    pub coefficients: Table,
    pub coeffs: CoefficientSet,
}

pub fn tier(max_error: f64) -> &'static str {
    if max_error <= STRETCH_TIER {
        "stretch"
    } else if max_error <= REQUIRED_TIER {
        "required"
    } else {
        "none"
    }
}

pub fn solve(spec: &BvpSpec, order: usize, samples: usize, timings: bool) -> Result<SolveOutput, CliError> {
    if samples < 2 {
        return Err(CliError::Usage("samples must be at least 2".into()));
    }
    let start = Instant::now();
    let basis = Basis::new(order)?;
    let basis_ms = elapsed_ms(start);
    let t1 = Instant::now();
    let sol = solve_steady(spec, &basis)?;
    let solve_ms = elapsed_ms(t1);
    let u = &sol.coeffs;

    let model = RunConfig::known_model(spec);
    let mut solution = Table::new(if model.is_some() {
        vec!["x", "u", "exact", "error"]
    } else {
        vec!["x", "u"]
    });
    let mut max_error: Option<f64> = model.map(|_| 0.0);
    for i in 0..samples {
        let x = -1.0 + 2.0 * i as f64 / (samples - 1) as f64;
        let v = u.synthesize(&basis, x)?;
        if !v.is_finite() {
            return Err(sixbeam::Error::NonFinite("synthesized solution").into());
        }
        let mut row = vec![Cell::Num(x), Cell::Num(v)];
        if let Some(e) = max_error.as_mut() {
            let exact = model_exact(x);
            *e = e.max((v - exact).abs());
            row.extend([Cell::Num(exact), Cell::Num(v - exact)]);
        }
        solution.push(row);
    }

    // row 0 carries u0c = ∫u
    let mut coefficients = Table::new(["n", "uc", "us", "abs_uc"]);
    coefficients.push(vec![Cell::Int(0), Cell::Num(u.u0c), Cell::Empty, Cell::Num(u.u0c.abs())]);
    for (n, (c, s)) in u.uc.iter().zip(&u.us).enumerate() {
        coefficients.push(vec![Cell::Int(n as i64 + 1), Cell::Num(*c), Cell::Num(*s), Cell::Num(c.abs())]);
    }
    let decay_fit = if order > FIT_FROM { decay(&u.uc, FIT_FROM, order).ok() } else { None };

    let summary = SolveSummary {
        command: "solve",
        order,
        model: model.map(|m| m.to_string()),
        spec: spec.clone(),
        solve_path: sol.path,
        pivots_negative: (!sol.pivots.is_empty()).then(|| sol.pivots.iter().all(|&d| d < 0.0)),
        u0c: u.u0c,
        samples,
        max_error,
        tier: max_error.map(tier),
        decay_fit,
        timings: timings.then(|| Timings {
            basis_ms,
            solve_ms,
            total_ms: elapsed_ms(start),
        }),
    };
    Ok(SolveOutput {
        summary,
        solution,
        coefficients,
        coeffs: sol.coeffs,
    })
}

pub fn run(cfg: &RunConfig) -> Result<(), CliError> {
    let spec = cfg.bvp()?;
    let out = solve(&spec, cfg.order()?, cfg.samples.unwrap_or(201), cfg.timings.unwrap_or(true))?;
    let format = cfg.format();
    match out_dir(cfg)? {
        Some(dir) => {
            let ext = format.extension();
            emit(Some(&dir.join(format!("solution.{ext}"))), |w| out.solution.write(w, format))?;
            emit(Some(&dir.join(format!("coefficients.{ext}"))), |w| out.coefficients.write(w, format))?;
            emit(Some(&dir.join("summary.json")), |w| write_json(w, &out.summary))?;
        }
        None => emit(None, |w| write_json(w, &out.summary))?,
    }
    if let Some(e) = out.summary.max_error {
        log::info!("max error {e:e} ({} tier)", tier(e));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiers() {
        assert_eq!(tier(4e-13), "stretch");
        assert_eq!(tier(6e-13), "required");
        assert_eq!(tier(2e-10), "none");
    }

    #[test]
    fn tiny_truncation_reports_a_larger_error() {
        let out = solve(&BvpSpec::model_i(), 4, 21, false).unwrap();
        let e = out.summary.max_error.unwrap();
        assert!(e > REQUIRED_TIER && e.is_finite());
        assert_eq!(out.summary.tier, Some("none"));
        assert!(out.summary.decay_fit.is_none());
        assert_eq!(out.solution.rows.len(), 21);
        assert_eq!(out.coefficients.rows.len(), 5);
    }

    #[test]
    fn custom_problem_has_no_error_column() {
        let spec = BvpSpec {
            a6: 1.0,
            a4: 0.0,
            a2: -1.0,
            a0: -2.0,
            forcing: vec![(0, 1.0)],
        };
        let out = solve(&spec, 10, 5, false).unwrap();
        assert_eq!(out.solution.columns, ["x", "u"]);
        assert!(out.summary.max_error.is_none() && out.summary.model.is_none());
    }
}
