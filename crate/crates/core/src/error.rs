use thiserror::Error;

use crate::eigenbasis::Parity;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("no asymptotic eigenvalue for mode index 0")]
    NoAsymptoticMode,

    #[error("invalid mode ({parity}, {index})")]
    InvalidMode { parity: Parity, index: usize },

    #[error("mode ({parity}, {index}) is not part of a basis of order {order}")]
    ModeNotInBasis {
        parity: Parity,
        index: usize,
        order: usize,
    },

    #[error("basis order {0} outside 1..=10000")]
    OrderOutOfRange(usize),

    #[error("x = {0} lies outside [-1, 1]")]
    OutsideDomain(f64),

    #[error("derivative order {0} exceeds 6")]
    DerivativeOrder(usize),

    #[error("no sign change of the eigenvalue relation on [{lo}, {hi}] ({parity}, m = {index})")]
    Bracketing {
        parity: Parity,
        index: usize,
        lo: f64,
        hi: f64,
    },

    #[error("root iteration did not converge within {iterations} steps (last x = {last})")]
    Convergence { iterations: usize, last: f64 },

    #[error("unsupported power x^{0}: expected an even power in 2..=12")]
    UnsupportedPower(u32),

    #[error("forcing power x^{0} must be even and at most 12")]
    ForcingPower(u32),

    #[error("coefficient index must be >= 1 (got {0})")]
    ZeroIndex(usize),

    #[error("gamma(odd, n, 0) vanishes identically by parity")]
    OddZeroMode,

    #[error("quadrature did not converge after {panels} panels (last change {delta:e})")]
    Quadrature { panels: usize, delta: f64 },

    #[error("operator coefficient a6 must be nonzero")]
    DegenerateOperator,

    #[error("resonance at mode {index}: diagonal {diagonal:e} is negligible against λ⁶ = {scale:e}")]
    Resonance {
        index: usize,
        diagonal: f64,
        scale: f64,
    },

    #[error("forcing mean {0:e} is incompatible with an operator that annihilates constants")]
    Inconsistent(f64),

    #[error("singular matrix in dense solve")]
    Singular,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("invalid time-stepping parameter: {0}")]
    Stepping(String),

    #[error("instability detected at step {step}: norm {norm:e} exceeds bound {bound:e}")]
    Instability { step: usize, norm: f64, bound: f64 },

    #[error("power-law fit needs at least two distinct points (got {0})")]
    Fit(usize),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
}
