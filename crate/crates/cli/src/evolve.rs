use std::time::Instant;

use serde::Serialize;
use sixbeam::galerkin::{assemble_with_reaction, evolve, solve_steady};
use sixbeam::linalg::SolvePath;
use sixbeam::{Basis, BvpSpec, CoefficientSet, Parity};

use crate::config::{Model, ModeRef, RunConfig, Term};
use crate::output::{emit, write_json, Cell, Table};
use crate::{elapsed_ms, out_dir, CliError, Timings};

/// Resolved dynamics: `u_t = B u'' - T u⁗ + u⁽⁶⁾ + R u + f`.
#[derive(Clone, Debug, Serialize)]
pub struct Dynamics {
    #[serde(rename = "M")]
    pub order: usize,
    #[serde(rename = "B")]
    pub bond: f64,
    #[serde(rename = "T")]
    pub tension: f64,
    #[serde(rename = "R")]
    pub reaction: f64,
    pub forcing: Vec<Term>,
    pub dt: f64,
    pub steps: usize,
    pub theta: f64,
    #[serde(skip)]
    pub initial: Vec<ModeRef>,
    #[serde(skip)]
    pub track: Vec<ModeRef>,
    #[serde(skip)]
    pub x: Vec<f64>,
    #[serde(skip)]
    pub every: usize,
}

impl Dynamics {
    pub fn from_config(cfg: &RunConfig) -> Result<Self, CliError> {
        let order = cfg.order()?;
        // a model preset: a₆ = 1, so B = a₂, T = -a₄, R = a₀ and f = -forcing
        let preset = cfg.model.map(Model::spec);
        let bond = cfg.bond.or(preset.as_ref().map(|s| s.a2)).unwrap_or(0.0);
        let tension = cfg.tension.or(preset.as_ref().map(|s| -s.a4)).unwrap_or(0.0);
        let reaction = cfg.reaction.or(preset.as_ref().map(|s| s.a0)).unwrap_or(0.0);
        let forcing = match (&cfg.forcing, &preset) {
            (Some(f), _) => f.clone(),
            (None, Some(s)) => s.forcing.iter().map(|&(p, c)| Term(p, -c)).collect(),
            (None, None) => Vec::new(),
        };
        let dt = cfg.dt.unwrap_or(1e-5);
        let theta = cfg.theta.unwrap_or(0.5);
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(CliError::Usage(format!("dt must be positive (got {dt})")));
        }
        if !(0.0..=1.0).contains(&theta) {
            return Err(CliError::Usage(format!("theta must lie in [0, 1] (got {theta})")));
        }
        for v in [bond, tension, reaction] {
            if !v.is_finite() {
                return Err(CliError::Usage("B, T and R must be finite".into()));
            }
        }
        let initial = cfg.initial.clone().unwrap_or_else(|| vec!["c1".parse().expect("literal")]);
        let track = cfg.track.clone().unwrap_or_else(|| initial.clone());
        for m in initial.iter().chain(&track) {
            if m.index > order {
                return Err(CliError::Usage(format!("mode {} is outside M = {order}", m.label())));
            }
        }
        let x = cfg.x.clone().unwrap_or_else(|| vec![0.0]);
        if let Some(bad) = x.iter().find(|v| !(-1.0..=1.0).contains(*v)) {
            return Err(CliError::Usage(format!("sample point {bad} lies outside [-1, 1]")));
        }
        let every = cfg.every.unwrap_or(1);
        if every == 0 {
            return Err(CliError::Usage("every must be at least 1".into()));
        }
        Ok(Self {
            order,
            bond,
            tension,
            reaction,
            forcing,
            dt,
            steps: cfg.steps.unwrap_or(100),
            theta,
            initial,
            track,
            x,
            every,
        })
    }

    /// The problem whose solution is the steady state.
    pub fn steady_spec(&self) -> BvpSpec {
        BvpSpec {
            a6: 1.0,
            a4: -self.tension,
            a2: self.bond,
            a0: self.reaction,
            forcing: self.forcing.iter().map(|t| (t.0, -t.1)).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SteadyComparison {
    pub solve_path: Option<SolvePath>,
    /// Largest coefficient difference from the steady solve.
    pub max_deviation: Option<f64>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EvolveSummary {
    pub command: &'static str,
    pub dynamics: Dynamics,
    pub final_time: f64,
    pub final_max_coefficient: f64,
    /// Present when the forcing is nonzero.
    pub steady: Option<SteadyComparison>,
    pub timings: Option<Timings>,
}

#[derive(Clone, Debug)]
pub struct EvolveOutput {
    pub summary: EvolveSummary,
    pub trajectory: Table,
    pub states: Vec<CoefficientSet>,
}

fn coefficient(u: &CoefficientSet, m: &ModeRef) -> f64 {
    match (m.parity, m.index) {
        (Parity::Even, 0) => u.u0c,
        (Parity::Even, n) => u.uc[n - 1],
        (Parity::Odd, n) => u.us[n - 1],
    }
}

pub fn simulate(d: &Dynamics, timings: bool) -> Result<EvolveOutput, CliError> {
    let start = Instant::now();
    let basis = Basis::new(d.order)?;
    let spec = d.steady_spec();
    let terms: Vec<(u32, f64)> = d.forcing.iter().map(|t| (t.0, t.1)).collect();
    let f = CoefficientSet::from_even_polynomial(&basis, &terms)?;
    let system = assemble_with_reaction(&basis, d.bond, d.tension, d.reaction, &f)?;
    let basis_ms = elapsed_ms(start);

    let mut u0 = CoefficientSet::zeros(d.order);
    for m in &d.initial {
        let unit = CoefficientSet::unit(d.order, m.parity, m.index)?;
        u0.u0c += m.amplitude * unit.u0c;
        for (a, b) in u0.uc.iter_mut().zip(&unit.uc) {
            *a += m.amplitude * b;
        }
        for (a, b) in u0.us.iter_mut().zip(&unit.us) {
            *a += m.amplitude * b;
        }
    }
    let t1 = Instant::now();
    let states = evolve(&system, &u0, d.dt, d.steps, d.theta)?;
    let solve_ms = elapsed_ms(t1);

    let mut cols = vec!["step".to_string(), "t".to_string()];
    cols.extend(d.track.iter().map(ModeRef::label));
    cols.extend(d.x.iter().map(|x| format!("u({x})")));
    let mut trajectory = Table::new(cols);
    for (k, u) in states.iter().enumerate() {
        if k % d.every != 0 && k != d.steps {
            continue;
        }
        let mut row = vec![Cell::Int(k as i64), Cell::Num(k as f64 * d.dt)];
        row.extend(d.track.iter().map(|m| Cell::Num(coefficient(u, m))));
        for &x in &d.x {
            row.push(Cell::Num(u.synthesize(&basis, x)?));
        }
        trajectory.push(row);
    }

    let last = states.last().expect("initial state");
    let steady = (!d.forcing.is_empty()).then(|| match solve_steady(&spec, &basis) {
        Ok(s) => {
            let c = &s.coeffs;
            let dev = c
                .uc
                .iter()
                .zip(&last.uc)
                .chain(c.us.iter().zip(&last.us))
                .map(|(a, b)| (a - b).abs())
                .fold((c.u0c - last.u0c).abs(), f64::max);
            SteadyComparison {
                solve_path: Some(s.path),
                max_deviation: Some(dev),
                error: None,
            }
        }
        Err(e) => SteadyComparison {
            solve_path: None,
            max_deviation: None,
            error: Some(e.to_string()),
        },
    });
    let summary = EvolveSummary {
        command: "evolve",
        dynamics: d.clone(),
        final_time: d.steps as f64 * d.dt,
        final_max_coefficient: last.max_abs(),
        steady,
        timings: timings.then(|| Timings {
            basis_ms,
            solve_ms,
            total_ms: elapsed_ms(start),
        }),
    };
    Ok(EvolveOutput {
        summary,
        trajectory,
        states,
    })
}

pub fn run(cfg: &RunConfig) -> Result<(), CliError> {
    let d = Dynamics::from_config(cfg)?;
    let out = simulate(&d, cfg.timings.unwrap_or(true))?;
    let format = cfg.format();
    match out_dir(cfg)? {
        Some(dir) => {
            let ext = format.extension();
            emit(Some(&dir.join(format!("trajectory.{ext}"))), |w| out.trajectory.write(w, format))?;
            emit(Some(&dir.join("summary.json")), |w| write_json(w, &out.summary))?;
        }
        None => emit(None, |w| out.trajectory.write(w, format))?,
    }
    if let Some(SteadyComparison {
        max_deviation: Some(dev),
        ..
    }) = &out.summary.steady
    {
        log::info!("final deviation from the steady solve {dev:e}");
    }
    Ok(())
}
