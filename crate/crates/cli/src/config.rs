//! Run configuration: a flat JSON file overlaid by command-line flags.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sixbeam::{BvpSpec, Parity};

use crate::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ParityFilter {
    #[default]
    Both,
    Even,
    Odd,
}

impl ParityFilter {
    pub fn includes(self, p: Parity) -> bool {
        match self {
            ParityFilter::Both => true,
            ParityFilter::Even => p == Parity::Even,
            ParityFilter::Odd => p == Parity::Odd,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
pub enum Model {
    #[value(name = "I", alias = "i", alias = "1")]
    I,
    #[value(name = "II", alias = "ii", alias = "2")]
    II,
}

impl Model {
    pub fn spec(self) -> BvpSpec {
        match self {
            Model::I => BvpSpec::model_i(),
            Model::II => BvpSpec::model_ii(),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::I => "I",
            Model::II => "II",
        })
    }
}

/// A mode label: `c3` is the third even mode, `c0` the constant, `s1` the
/// first odd mode. An optional `=a` suffix sets an amplitude.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModeRef {
    pub parity: Parity,
    pub index: usize,
    pub amplitude: f64,
}

impl ModeRef {
    pub fn label(&self) -> String {
        format!("{}{}", self.parity.letter(), self.index)
    }
}

impl FromStr for ModeRef {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (name, amp) = match s.split_once('=') {
            Some((n, a)) => (n, a.trim().parse::<f64>().map_err(|e| format!("mode `{s}`: {e}"))?),
            None => (s, 1.0),
        };
        let name = name.trim();
        let parity = match name.chars().next() {
            Some('c') => Parity::Even,
            Some('s') => Parity::Odd,
            _ => return Err(format!("mode `{s}`: expected c<n> or s<n>")),
        };
        let index: usize = name[1..].parse().map_err(|_| format!("mode `{s}`: bad index"))?;
        if index < parity.first_index() {
            return Err(format!("mode `{s}`: odd modes start at s1"));
        }
        Ok(ModeRef {
            parity,
            index,
            amplitude: amp,
        })
    }
}

impl<'de> Deserialize<'de> for ModeRef {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One forcing term `c·x^p`, written `p:c` on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term(pub u32, pub f64);

impl FromStr for Term {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (p, c) = s.split_once(':').ok_or_else(|| format!("term `{s}`: expected <power>:<coefficient>"))?;
        let p = p.trim().parse().map_err(|_| format!("term `{s}`: bad power"))?;
        let c = c.trim().parse().map_err(|_| format!("term `{s}`: bad coefficient"))?;
        Ok(Term(p, c))
    }
}

/// Every setting any command reads. All fields are optional so that a
/// file and the flags can be merged; defaults are applied per command.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(rename = "M")]
    pub order: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub timings: Option<bool>,

    pub m_max: Option<usize>,
    pub parity: Option<ParityFilter>,

    pub model: Option<Model>,
    pub a6: Option<f64>,
    pub a4: Option<f64>,
    pub a2: Option<f64>,
    pub a0: Option<f64>,
    pub forcing: Option<Vec<Term>>,
    pub samples: Option<usize>,

    pub max_index: Option<usize>,

    #[serde(rename = "B")]
    pub bond: Option<f64>,
    #[serde(rename = "T")]
    pub tension: Option<f64>,
    #[serde(rename = "R")]
    pub reaction: Option<f64>,
    pub dt: Option<f64>,
    pub steps: Option<usize>,
    pub theta: Option<f64>,
    pub initial: Option<Vec<ModeRef>>,
    pub track: Option<Vec<ModeRef>>,
    pub x: Option<Vec<f64>>,
    pub every: Option<usize>,
}

macro_rules! overlay {
    ($dst:ident, $src:ident; $($f:ident),*) => {
        $( if $src.$f.is_some() { $dst.$f = $src.$f; } )*
    };
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }

    /// Parse errors carry the line, column and offending field.
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Values set in `flags` win.
    pub fn overlay(mut self, flags: RunConfig) -> Self {
        overlay!(self, flags; order, out, format, timings, m_max, parity, model, a6, a4, a2, a0,
            forcing, samples, max_index, bond, tension, reaction, dt, steps, theta, initial, track, x, every);
        self
    }

    pub fn order(&self) -> Result<usize, CliError> {
        match self.order.unwrap_or(100) {
            0 => Err(CliError::Usage("M must be at least 1".into())),
            m if m > 10_000 => Err(CliError::Usage(format!("M = {m} exceeds 10000"))),
            m => Ok(m),
        }
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    /// The steady problem: a model, a custom operator, or a model with
    /// individual fields replaced.
    pub fn bvp(&self) -> Result<BvpSpec, CliError> {
        let mut spec = match self.model {
            Some(m) => m.spec(),
            None => {
                if self.a6.is_none() && self.forcing.is_none() {
                    return Err(CliError::Usage("solve needs --model or a custom operator (--a6 ... --forcing)".into()));
                }
                BvpSpec {
                    a6: 1.0,
                    a4: 0.0,
                    a2: 0.0,
                    a0: 0.0,
                    forcing: Vec::new(),
                }
            }
        };
        if let Some(v) = self.a6 {
            spec.a6 = v;
        }
        if let Some(v) = self.a4 {
            spec.a4 = v;
        }
        if let Some(v) = self.a2 {
            spec.a2 = v;
        }
        if let Some(v) = self.a0 {
            spec.a0 = v;
        }
        if let Some(f) = &self.forcing {
            spec.forcing = f.iter().map(|t| (t.0, t.1)).collect();
        }
        spec.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(spec)
    }

    /// Which model the problem is, if any; an explicit spec equal to a
    /// model counts as that model.
    pub fn known_model(spec: &BvpSpec) -> Option<Model> {
        [Model::I, Model::II].into_iter().find(|m| &m.spec() == spec)
    }
}
