//! Command-line front end for `sixbeam`: eigenvalue tables, steady solves,
//! closed-form verification sweeps and time integration.
//!
//! Exit codes: 0 on success, 1 for usage and input errors, 2 for numerical
//! failures (including a failed verification sweep).

use std::io;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

pub mod config;
pub mod eigenvalues;
pub mod evolve;
pub mod output;
pub mod solve;
pub mod verify;

use config::{Format, Model, ModeRef, ParityFilter, RunConfig, Term};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Numerical(#[from] sixbeam::Error),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Numerical(_) | CliError::Verification(_) => 2,
        }
    }
}

/// Wall-clock milliseconds per phase. Omitted with `--no-timings`, which
/// makes every output byte-for-byte reproducible.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct Timings {
    pub basis_ms: f64,
    pub solve_ms: f64,
    pub total_ms: f64,
}

pub(crate) fn elapsed_ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

#[derive(Debug, Parser)]
#[command(name = "sixbeam", version, about = "Spectral Galerkin tools for the sixth-order beam eigenbasis")]
pub struct Cli {
    /// Log verbosity (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate eigenvalues next to their asymptotic approximations.
    Eigenvalues(EigenvaluesArgs),
    /// Solve a model or custom steady problem.
    Solve(SolveArgs),
    /// Check every closed-form coefficient against quadrature.
    Verify(VerifyArgs),
    /// Integrate the semi-discrete system in time.
    Evolve(EvolveArgs),
}

#[derive(Debug, Default, Args)]
pub struct Common {
    /// JSON config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Truncation order (modes per parity).
    #[arg(long = "M", value_name = "M")]
    pub order: Option<usize>,
    /// Output file (eigenvalues, verify) or directory (solve, evolve).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Leave wall-clock timings out of summaries.
    #[arg(long)]
    pub no_timings: bool,
}

impl Common {
    fn to_config(&self) -> RunConfig {
        RunConfig {
            order: self.order,
            out: self.out.clone(),
            format: self.format,
            timings: self.no_timings.then_some(false),
            ..Default::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct EigenvaluesArgs {
    #[command(flatten)]
    pub common: Common,
    /// Largest index tabulated (defaults to M).
    #[arg(long)]
    pub m_max: Option<usize>,
    #[arg(long, value_enum)]
    pub parity: Option<ParityFilter>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum)]
    pub model: Option<Model>,
    #[arg(long, allow_negative_numbers = true)]
    pub a6: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub a4: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub a2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub a0: Option<f64>,
    /// Forcing terms `p:c` for c·x^p, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub forcing: Option<Vec<Term>>,
    /// Number of uniform sample points on [-1, 1].
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    /// Largest mode index swept (at most 50).
    #[arg(long)]
    pub max_index: Option<usize>,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub common: Common,
    /// Take B, T, R and the forcing from a model so that its solution is
    /// the steady state.
    #[arg(long, value_enum)]
    pub model: Option<Model>,
    #[arg(long = "B", allow_negative_numbers = true)]
    pub bond: Option<f64>,
    #[arg(long = "T", allow_negative_numbers = true)]
    pub tension: Option<f64>,
    #[arg(long = "R", allow_negative_numbers = true)]
    pub reaction: Option<f64>,
    /// Forcing terms `p:c`, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub forcing: Option<Vec<Term>>,
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub theta: Option<f64>,
    /// Initial modes such as `c1` or `s2=0.5`, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub initial: Option<Vec<ModeRef>>,
    /// Coefficients written to the trajectory (defaults to the initial modes).
    #[arg(long, value_delimiter = ',')]
    pub track: Option<Vec<ModeRef>>,
    /// Sample points written to the trajectory.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x: Option<Vec<f64>>,
    /// Write every k-th step.
    #[arg(long)]
    pub every: Option<usize>,
}

fn load(common: &Common, flags: RunConfig) -> Result<RunConfig, CliError> {
    let base = match &common.config {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    };
    Ok(base.overlay(flags))
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Eigenvalues(a) => {
            let cfg = load(
                &a.common,
                RunConfig {
                    m_max: a.m_max,
                    parity: a.parity,
                    ..a.common.to_config()
                },
            )?;
            eigenvalues::run(&cfg)
        }
        Command::Solve(a) => {
            let cfg = load(
                &a.common,
                RunConfig {
                    model: a.model,
                    a6: a.a6,
                    a4: a.a4,
                    a2: a.a2,
                    a0: a.a0,
                    forcing: a.forcing.clone(),
                    samples: a.samples,
                    ..a.common.to_config()
                },
            )?;
            solve::run(&cfg)
        }
        Command::Verify(a) => {
            let cfg = load(
                &a.common,
                RunConfig {
                    max_index: a.max_index,
                    ..a.common.to_config()
                },
            )?;
            verify::run(&cfg)
        }
        Command::Evolve(a) => {
            let cfg = load(
                &a.common,
                RunConfig {
                    model: a.model,
                    bond: a.bond,
                    tension: a.tension,
                    reaction: a.reaction,
                    forcing: a.forcing.clone(),
                    dt: a.dt,
                    steps: a.steps,
                    theta: a.theta,
                    initial: a.initial.clone(),
                    track: a.track.clone(),
                    x: a.x.clone(),
                    every: a.every,
                    ..a.common.to_config()
                },
            )?;
            evolve::run(&cfg)
        }
    }
}

/// Output directory for multi-file commands, created on demand.
pub(crate) fn out_dir(cfg: &RunConfig) -> Result<Option<PathBuf>, CliError> {
    match &cfg.out {
        Some(d) => {
            std::fs::create_dir_all(d)
                .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", d.display())))?;
            Ok(Some(d.clone()))
        }
        None => Ok(None),
    }
}
