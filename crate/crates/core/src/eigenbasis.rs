//! Eigenvalues and normalized eigenfunctions of `-ψ⁽⁶⁾ = λ⁶ψ` with
//! `ψ' = ψ'' = ψ⁽⁵⁾ = 0` at `x = ±1`.
//!
//! Even modes satisfy
//!
//! ```text
//!     cos 2λ + √3 sin λ sinh √3λ - cos λ cosh √3λ = 0
//! ```
//!
//! and odd modes
//!
//! ```text
//!     sin 2λ + √3 cos λ sinh √3λ + sin λ cosh √3λ = 0.
//! ```
//!
//! Both relations are divided by `cosh √3λ` before root finding so the
//! residual is `O(1)`. Roots approach `(m + 1/6)π` (even) and `(m - 1/3)π`
//! (odd) exponentially fast.
//!
//! Eigenfunctions are evaluated from the five-term general solution written
//! as a single complex exponential pair, `ψ = c·(A·Im[...] + cos λx)`, so
//! every derivative is an exact multiplication by `ζᵏ` with
//! `ζ = λ e^{iπ/6}`. The boundary-layer part is combined with its
//! `e^{-√3λ}` prefactor inside one exponential; nothing overflows.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_6, PI};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperbolic::{cosh_scaled, sinh_scaled, ScaledHyperbolic};
use crate::roots::safeguarded_newton;

pub const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Largest supported truncation order.
pub const MAX_ORDER: usize = 10_000;

/// Highest derivative order supported by [`Mode::eval`].
pub const MAX_DERIVATIVE: usize = 6;

const ROOT_REL_TOL: f64 = 1e-14;
const ROOT_MAX_ITER: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// Smallest valid mode index: the constant mode is even with `m = 0`.
    pub fn first_index(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    /// Superscript letter used for the family (`c` for cosine-like, `s`
    /// for sine-like).
    pub fn letter(self) -> char {
        match self {
            Parity::Even => 'c',
            Parity::Odd => 's',
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => f.write_str("even"),
            Parity::Odd => f.write_str("odd"),
        }
    }
}

impl std::str::FromStr for Parity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "even" | "c" => Ok(Parity::Even),
            "odd" | "s" => Ok(Parity::Odd),
            other => Err(format!("unknown parity '{other}' (expected even|odd)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub parity: Parity,
    pub index: usize,
    pub lambda: f64,
}

/// Large-λ approximation: `(m + 1/6)π` for even modes, `(m - 1/3)π` for odd.
pub fn eigenvalue_asymptotic(parity: Parity, m: usize) -> Result<f64> {
    if m == 0 {
        return Err(Error::NoAsymptoticMode);
    }
    let m = m as f64;
    Ok(match parity {
        Parity::Even => (m + 1.0 / 6.0) * PI,
        Parity::Odd => (m - 1.0 / 3.0) * PI,
    })
}

/// Eigenvalue relation divided by `cosh √3λ`, with its λ-derivative.
pub fn scaled_relation(parity: Parity, lambda: f64) -> (f64, f64) {
    let hyp = ScaledHyperbolic::new(SQRT_3 * lambda);
    let (sech, tanh) = (hyp.sech(), hyp.tanh());
    let (s, c) = lambda.sin_cos();
    let (s2, c2) = (2.0 * lambda).sin_cos();
    match parity {
        Parity::Even => {
            let f = c2 * sech + SQRT_3 * s * tanh - c;
            let df = -2.0 * s2 * sech - SQRT_3 * c2 * sech * tanh
                + SQRT_3 * c * tanh
                + 3.0 * s * sech * sech
                + s;
            (f, df)
        }
        Parity::Odd => {
            let f = s2 * sech + SQRT_3 * c * tanh + s;
            let df = 2.0 * c2 * sech - SQRT_3 * s2 * sech * tanh - SQRT_3 * s * tanh
                + 3.0 * c * sech * sech
                + c;
            (f, df)
        }
    }
}

/// Residual of the scaled eigenvalue relation relative to its largest term.
pub fn relative_residual(parity: Parity, lambda: f64) -> f64 {
    let hyp = ScaledHyperbolic::new(SQRT_3 * lambda);
    let (sech, tanh) = (hyp.sech(), hyp.tanh());
    let (s, c) = lambda.sin_cos();
    let (s2, c2) = (2.0 * lambda).sin_cos();
    let terms = match parity {
        Parity::Even => [c2 * sech, SQRT_3 * s * tanh, -c],
        Parity::Odd => [s2 * sech, SQRT_3 * c * tanh, s],
    };
    let largest = terms.iter().fold(0.0f64, |acc, t| acc.max(t.abs()));
    terms.iter().sum::<f64>().abs() / largest
}

/// Solves the eigenvalue relation for mode `(parity, m)`.
///
/// Newton iteration starts at the asymptotic value inside the bracket
/// `asymptotic ± π/2` (`± 1` for `m = 1`). From `m = 7` on the asymptotic
/// value is already correct to about twelve digits, so a single Newton step
/// removes the remaining bias.
pub fn solve_eigenvalue(parity: Parity, m: usize) -> Result<Eigenvalue> {
    if m < parity.first_index() {
        return Err(Error::InvalidMode { parity, index: m });
    }
    if m == 0 {
        return Ok(Eigenvalue {
            parity,
            index: 0,
            lambda: 0.0,
        });
    }
    let guess = eigenvalue_asymptotic(parity, m)?;
    let half_width = if m == 1 { 1.0 } else { FRAC_PI_2 };
    let (lo, hi) = (guess - half_width, guess + half_width);
    let f = |l: f64| scaled_relation(parity, l);
    if f(lo).0.signum() == f(hi).0.signum() {
        return Err(Error::Bracketing {
            parity,
            index: m,
            lo,
            hi,
        });
    }
    let lambda = safeguarded_newton(f, lo, hi, guess, ROOT_REL_TOL, ROOT_MAX_ITER)?;
    Ok(Eigenvalue {
        parity,
        index: m,
        lambda,
    })
}

/// One eigenfunction with its normalization and scaled boundary-layer data.
#[derive(Clone, Debug)]
pub struct Mode {
    pub parity: Parity,
    pub index: usize,
    pub lambda: f64,
    /// `cosh`, `sinh` of `√3λ` relative to `e^{√3λ}`.
    pub hyp: ScaledHyperbolic,
    pub sin: f64,
    pub cos: f64,
    /// `(cos λ ∓ cosh √3λ)·e^{-√3λ}`: minus sign for even modes, plus for odd.
    pub denom: f64,
    /// Normalization constant `c_m` (of order one for every `m`).
    pub norm: f64,
    /// Normalization integral `d_m·e^{-2√3λ}`.
    pub dscaled: f64,
    /// Boundary-layer amplitude `4 sin λ / denom` (even) or
    /// `4 cos λ / denom` (odd); the true amplitude is this times `e^{-√3λ}`.
    amp: f64,
}

impl Mode {
    pub fn new(ev: Eigenvalue) -> Self {
        let Eigenvalue {
            parity,
            index,
            lambda,
        } = ev;
        if index == 0 {
            return Self {
                parity,
                index,
                lambda: 0.0,
                hyp: ScaledHyperbolic::new(0.0),
                sin: 0.0,
                cos: 1.0,
                denom: 0.0,
                norm: 1.0,
                dscaled: 0.0,
                amp: 0.0,
            };
        }
        let l = lambda;
        let hyp = ScaledHyperbolic::new(SQRT_3 * l);
        let e = hyp.decay;
        let e2 = e * e;
        let (s, c) = l.sin_cos();
        let (s2, c2) = (2.0 * l).sin_cos();
        let (s3, c3) = (3.0 * l).sin_cos();
        let s4 = (4.0 * l).sin();
        let (ch, sh) = (hyp.cosh, hyp.sinh);
        let (denom, dscaled, amp) = match parity {
            Parity::Even => {
                let denom = c * e - ch;
                let d = (s4 - 6.0 * l * (c2 - 2.0)) * e2
                    + 2.0 * l * hyp.cosh_double()
                    + 2.0 * s2 * ch * ch
                    + ch * e * (s - 3.0 * s3 + 4.0 * l * (c3 - 3.0 * c))
                    + 4.0 * SQRT_3 * s * s * sh * denom;
                (denom, d, 4.0 * s / denom)
            }
            Parity::Odd => {
                let denom = c * e + ch;
                let d = (12.0 * l - 3.0 * s2 - s4 + 10.0 * l * c2) * e2
                    - (s2 - 2.0 * l) * hyp.cosh_double()
                    - 4.0 * SQRT_3 * c * c * sh * denom
                    + 2.0 * c * ch * e * (4.0 * l * (c2 + 2.0) - 3.0 * s2);
                (denom, d, 4.0 * c / denom)
            }
        };
        let norm = 2.0 * (l / dscaled).sqrt() * denom;
        Self {
            parity,
            index,
            lambda: l,
            hyp,
            sin: s,
            cos: c,
            denom,
            norm,
            dscaled,
            amp,
        }
    }

    pub fn eigenvalue(&self) -> Eigenvalue {
        Eigenvalue {
            parity: self.parity,
            index: self.index,
            lambda: self.lambda,
        }
    }

    /// `ψ⁽ᵏ⁾(x)` without range checks; `|x| ≤ 1` and `k ≤ 6` are the caller's
    /// responsibility.
    pub fn eval(&self, x: f64, k: usize) -> f64 {
        debug_assert!(k <= MAX_DERIVATIVE);
        if self.index == 0 {
            return if k == 0 { 1.0 } else { 0.0 };
        }
        let l = self.lambda;
        let h = 0.5 * SQRT_3 * l;
        let zeta = Complex64::new(h, 0.5 * l);
        let lk = l.powi(k as i32);
        let zk = Complex64::from_polar(lk, k as f64 * FRAC_PI_6);
        let shift = 2.0 * h;
        // ζ̄ ± ζx; real parts h(1 ± x) stay inside [0, 2h]
        let plus = zeta.conj() + zeta * x;
        let minus = zeta.conj() - zeta * x;
        let lx = l * x;
        match self.parity {
            Parity::Even => {
                let pair = if k.is_multiple_of(2) {
                    0.5 * (sinh_scaled(plus, shift) + sinh_scaled(minus, shift))
                } else {
                    0.5 * (cosh_scaled(plus, shift) - cosh_scaled(minus, shift))
                };
                let trig = match k % 4 {
                    0 => lx.cos(),
                    1 => -lx.sin(),
                    2 => -lx.cos(),
                    _ => lx.sin(),
                };
                self.norm * (-self.amp * (zk * pair).im + lk * trig)
            }
            Parity::Odd => {
                let pair = if k.is_multiple_of(2) {
                    0.5 * (sinh_scaled(plus, shift) - sinh_scaled(minus, shift))
                } else {
                    0.5 * (cosh_scaled(plus, shift) + cosh_scaled(minus, shift))
                };
                let trig = match k % 4 {
                    0 => lx.sin(),
                    1 => lx.cos(),
                    2 => -lx.sin(),
                    _ => -lx.cos(),
                };
                self.norm * (-self.amp * (zk * pair).im + lk * trig)
            }
        }
    }

    /// Every stored constant is finite.
    pub fn is_finite(&self) -> bool {
        [
            self.lambda,
            self.hyp.decay,
            self.hyp.cosh,
            self.hyp.sinh,
            self.denom,
            self.norm,
            self.dscaled,
            self.amp,
        ]
        .iter()
        .all(|v| v.is_finite())
    }
}

/// Truncated eigenbasis: even modes `0..=M`, odd modes `1..=M`.
#[derive(Clone, Debug)]
pub struct Basis {
    order: usize,
    even: Vec<Mode>,
    odd: Vec<Mode>,
}

impl Basis {
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::OrderOutOfRange(order));
        }
        let even = (0..=order)
            .map(|m| solve_eigenvalue(Parity::Even, m).map(Mode::new))
            .collect::<Result<Vec<_>>>()?;
        let odd = (1..=order)
            .map(|m| solve_eigenvalue(Parity::Odd, m).map(Mode::new))
            .collect::<Result<Vec<_>>>()?;
        let basis = Self { order, even, odd };
        basis.audit()?;
        Ok(basis)
    }

    /// Truncation order `M`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mode(&self, parity: Parity, m: usize) -> Result<&Mode> {
        let found = match parity {
            Parity::Even => self.even.get(m),
            Parity::Odd => m.checked_sub(1).and_then(|i| self.odd.get(i)),
        };
        found.ok_or(Error::ModeNotInBasis {
            parity,
            index: m,
            order: self.order,
        })
    }

    /// Modes `1..=M` of one parity (the even constant mode is excluded).
    pub fn modes(&self, parity: Parity) -> &[Mode] {
        match parity {
            Parity::Even => &self.even[1..],
            Parity::Odd => &self.odd,
        }
    }

    pub fn eigenvalues(&self, parity: Parity) -> Vec<f64> {
        match parity {
            Parity::Even => self.even.iter().map(|m| m.lambda).collect(),
            Parity::Odd => self.odd.iter().map(|m| m.lambda).collect(),
        }
    }

    /// `ψ⁽ᵏ⁾(x)` for mode `(parity, m)`.
    pub fn eval_psi(&self, parity: Parity, m: usize, x: f64, k: usize) -> Result<f64> {
        if !(-1.0..=1.0).contains(&x) {
            return Err(Error::OutsideDomain(x));
        }
        if k > MAX_DERIVATIVE {
            return Err(Error::DerivativeOrder(k));
        }
        Ok(self.mode(parity, m)?.eval(x, k))
    }

    /// Verifies that every stored eigenvalue and scaled constant is finite
    /// and every normalization constant nonzero.
    pub fn audit(&self) -> Result<()> {
        for mode in self.even.iter().chain(&self.odd) {
            if !mode.is_finite() || mode.norm == 0.0 {
                return Err(Error::NonFinite("basis normalization data"));
            }
        }
        Ok(())
    }
}
