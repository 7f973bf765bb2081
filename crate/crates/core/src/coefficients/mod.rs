//! Galerkin expansion coefficients in closed form.
//!
//! * `β_nm = ⟨ψ_n'', ψ_m⟩` (second derivative)
//! * `γ_nm = ⟨ψ_n⁗, ψ_m⟩` (fourth derivative), plus `γ_n0 = ⟨ψ_n⁗, 1⟩`
//!   for even modes
//! * `χ^{p}_m = ⟨x^p, ψ_m^c⟩` for `p = 2, 4, …, 12`
//!
//! All formulas are evaluated on the exponent-scaled quantities stored in
//! [`Mode`]: every `cosh √3λ`/`sinh √3λ` becomes its mantissa, and every term
//! lacking one picks up a factor `e^{-√3λ}`. Branches `n = m` / `n ≠ m` are
//! selected by index equality only.
//!
//! The diagonal `β` entries and one of the `χ` prefactors differ from the
//! commonly quoted forms; the quoted variants live in [`published`] so they
//! can be checked against quadrature.

pub mod published;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eigenbasis::{Basis, Mode, Parity, SQRT_3};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadOptions};

/// Supported even powers for [`chi`].
pub const CHI_POWERS: [u32; 6] = [2, 4, 6, 8, 10, 12];

/// `λ_m³λ_n³ / (λ_m⁶ - λ_n⁶)` without forming sixth powers.
fn cross_ratio(ln: f64, lm: f64) -> f64 {
    let r = (lm / ln).powi(3);
    1.0 / (r - 1.0 / r)
}

/// Even-mode factor `(cos 2λ - √3 sin λ sinh √3λ - cos λ cosh √3λ) /
/// (cos λ - cosh √3λ)` and its λ-derivative.
fn even_factor(md: &Mode) -> (f64, f64) {
    let e = md.hyp.decay;
    let (sh, ch) = (md.hyp.sinh, md.hyp.cosh);
    let (s, c) = (md.sin, md.cos);
    let (s2, c2) = (2.0 * md.lambda).sin_cos();
    let num = c2 * e - SQRT_3 * s * sh - c * ch;
    let dnum = -2.0 * s2 * e - 2.0 * SQRT_3 * c * sh - 2.0 * s * ch;
    let dden = -s * e - SQRT_3 * sh;
    let g = num / md.denom;
    (g, dnum / md.denom - g * dden / md.denom)
}

/// Odd-mode factor `(sin 2λ - √3 cos λ sinh √3λ + sin λ cosh √3λ) /
/// (cos λ + cosh √3λ)` and its λ-derivative.
fn odd_factor(md: &Mode) -> (f64, f64) {
    let e = md.hyp.decay;
    let (sh, ch) = (md.hyp.sinh, md.hyp.cosh);
    let (s, c) = (md.sin, md.cos);
    let (s2, c2) = (2.0 * md.lambda).sin_cos();
    let num = s2 * e - SQRT_3 * c * sh + s * ch;
    let dnum = 2.0 * c2 * e + 2.0 * SQRT_3 * s * sh - 2.0 * c * ch;
    let dden = -s * e + SQRT_3 * sh;
    let g = num / md.denom;
    (g, dnum / md.denom - g * dden / md.denom)
}

fn check_index(i: usize) -> Result<()> {
    if i == 0 {
        Err(Error::ZeroIndex(i))
    } else {
        Ok(())
    }
}

/// `β_nm = ⟨ψ_n'', ψ_m⟩` for `n, m ≥ 1`.
pub fn beta(basis: &Basis, parity: Parity, n: usize, m: usize) -> Result<f64> {
    check_index(n)?;
    check_index(m)?;
    Ok(beta_modes(basis.mode(parity, n)?, basis.mode(parity, m)?))
}

pub(crate) fn beta_modes(mn: &Mode, mm: &Mode) -> f64 {
    let (ln, lm) = (mn.lambda, mm.lambda);
    match (mn.parity, mn.index == mm.index) {
        (Parity::Even, false) => {
            let pre = 6.0 * mn.norm * mm.norm * cross_ratio(ln, lm);
            pre * (lm * mn.sin * even_factor(mm).0 - ln * mm.sin * even_factor(mn).0)
        }
        (Parity::Even, true) => {
            let l = ln;
            let e = mn.hyp.decay;
            let (sh, ch) = (mn.hyp.sinh, mn.hyp.cosh);
            let (s, c) = (mn.sin, mn.cos);
            let c2 = (2.0 * l).cos();
            let d = mn.denom;
            let inner = l
                * (3.0 * c2 * e * e + sh * sh + ch * ch + 4.0 * SQRT_3 * s * s * s * sh * e
                    - 4.0 * c * c * c * ch * e)
                + 2.0 * s * d * (SQRT_3 * s * sh + c * ch - c2 * e);
            -l * mn.norm * mn.norm / (2.0 * d * d) * inner
        }
        (Parity::Odd, false) => {
            let pre = 6.0 * mn.norm * mm.norm * cross_ratio(ln, lm);
            pre * (-lm * mn.cos * odd_factor(mm).0 + ln * mm.cos * odd_factor(mn).0)
        }
        (Parity::Odd, true) => {
            // limit λ_m → λ_n of the off-diagonal branch
            let l = ln;
            let (g, dg) = odd_factor(mn);
            -mn.norm * mn.norm * l * (mn.cos * (g + l * dg) + l * mn.sin * g)
        }
    }
}

/// Diagonal `β_nn` obtained as the `λ_m → λ_n` limit of the off-diagonal
/// branch, for either parity. Used as an independent check of the direct
/// even-parity diagonal formula.
pub fn beta_diagonal_limit(basis: &Basis, parity: Parity, n: usize) -> Result<f64> {
    check_index(n)?;
    let md = basis.mode(parity, n)?;
    let l = md.lambda;
    let c2 = md.norm * md.norm;
    Ok(match parity {
        Parity::Even => {
            let (g, dg) = even_factor(md);
            c2 * l * (md.sin * (g + l * dg) - l * md.cos * g)
        }
        Parity::Odd => beta_modes(md, md),
    })
}

/// `γ_nm = ⟨ψ_n⁗, ψ_m⟩`; `m = 0` is allowed for even parity only.
pub fn gamma(basis: &Basis, parity: Parity, n: usize, m: usize) -> Result<f64> {
    check_index(n)?;
    if m == 0 {
        return match parity {
            Parity::Even => Ok(gamma_zero(basis.mode(parity, n)?)),
            Parity::Odd => Err(Error::OddZeroMode),
        };
    }
    Ok(gamma_modes(basis.mode(parity, n)?, basis.mode(parity, m)?))
}

/// `γ_n0 = ⟨ψ_n⁗, 1⟩ = 6 c_n λ_n³ sin λ_n` for an even mode.
pub(crate) fn gamma_zero(mn: &Mode) -> f64 {
    6.0 * mn.norm * mn.lambda.powi(3) * mn.sin
}

pub(crate) fn gamma_modes(mn: &Mode, mm: &Mode) -> f64 {
    let (ln, lm) = (mn.lambda, mm.lambda);
    match (mn.parity, mn.index == mm.index) {
        (Parity::Even, false) => {
            let h = |md: &Mode| {
                let e = md.hyp.decay;
                (-3.0 * e + (2.0 * md.lambda).cos() * e + 2.0 * md.cos * md.hyp.cosh) / md.denom
            };
            // λ_n⁶ / (λ_m⁶ - λ_n⁶)
            let pre = 3.0 * mn.norm * mm.norm / ((lm / ln).powi(6) - 1.0);
            pre * (-lm.powi(3) * mm.sin * h(mn) + ln.powi(3) * mn.sin * h(mm))
        }
        (Parity::Even, true) => {
            let l = ln;
            let e = mn.hyp.decay;
            let e2 = e * e;
            let (sh, ch) = (mn.hyp.sinh, mn.hyp.cosh);
            let (s, c) = (mn.sin, mn.cos);
            let (s2, c2) = (2.0 * l).sin_cos();
            let s4 = (4.0 * l).sin();
            let ch2 = mn.hyp.cosh_double();
            let inner = 6.0 * s2 * (ch2 + 4.0 * e2) - 3.0 * s4 * e2 - 48.0 * s * ch * e
                + 4.0
                    * l
                    * (-4.0 * SQRT_3 * s * s * s * sh * e - 4.0 * c * c * c * ch * e
                        + 3.0 * c2 * e2
                        + ch2);
            let d = mn.denom;
            l.powi(3) * mn.norm * mn.norm / (8.0 * d * d) * inner
        }
        (Parity::Odd, false) => {
            let h = |md: &Mode| (md.hyp.cosh - md.cos * md.hyp.decay) / md.denom;
            // λ_n⁶ / (λ_n⁶ - λ_m⁶)
            let pre = 6.0 * mn.norm * mm.norm / (1.0 - (lm / ln).powi(6));
            pre * (lm.powi(3) * mm.cos * mn.sin * h(mn) - ln.powi(3) * mm.sin * mn.cos * h(mm))
        }
        (Parity::Odd, true) => {
            let l = ln;
            let e = mn.hyp.decay;
            let e2 = e * e;
            let (sh, ch) = (mn.hyp.sinh, mn.hyp.cosh);
            let (s, c) = (mn.sin, mn.cos);
            let (s2, c2) = (2.0 * l).sin_cos();
            let ch2 = mn.hyp.cosh_double();
            let inner = 6.0 * s2 * (c2 * e2 - ch2)
                + 4.0 * l * (-c2 * e2 + ch * ch + sh * sh + 2.0 * s2 * (s * ch + SQRT_3 * c * sh) * e);
            let d = mn.denom;
            l.powi(3) * mn.norm * mn.norm / (8.0 * d * d) * inner
        }
    }
}

/// `χ^{p}_m = ⟨x^p, ψ_m^c⟩` for `p ∈ {2, 4, …, 12}`, `m ≥ 1`.
pub fn chi(basis: &Basis, p: u32, m: usize) -> Result<f64> {
    if !CHI_POWERS.contains(&p) {
        return Err(Error::UnsupportedPower(p));
    }
    check_index(m)?;
    Ok(chi_mode(basis.mode(Parity::Even, m)?, p))
}

pub(crate) fn chi_mode(md: &Mode, p: u32) -> f64 {
    let l = md.lambda;
    let e = md.hyp.decay;
    let (sh, ch) = (md.hyp.sinh, md.hyp.cosh);
    let (s, c) = (md.sin, md.cos);
    let (s2, c2) = (2.0 * l).sin_cos();
    let l2 = l * l;
    let l3 = l2 * l;
    let l4 = l2 * l2;
    let l6 = l4 * l2;
    let l8 = l4 * l4;
    let l10 = l8 * l2;
    let (k, q, inner) = match p {
        2 => (
            -4.0,
            3,
            -l * c2 * e + SQRT_3 * l * s * sh + 3.0 * s * c * e + (l * c - 3.0 * s) * ch,
        ),
        4 => (
            8.0,
            4,
            (l2 - 6.0) * (c2 * e - c * ch) - (SQRT_3 * (l2 + 6.0) * sh + 9.0 * l * (c * e - ch)) * s,
        ),
        6 => (
            6.0,
            6,
            360.0 * e + 2.0 * (l4 - 20.0 * l2 - 60.0) * c2 * e - 15.0 * l3 * s2 * e
                + (30.0 * l3 * s - 2.0 * (l4 - 20.0 * l2 + 120.0) * c) * ch
                - 2.0 * SQRT_3 * l2 * (l2 + 20.0) * s * sh,
        ),
        8 => (
            8.0,
            9,
            2520.0 * l3 * e - 21.0 * (l6 - 720.0) * s2 * e
                + 2.0 * (l6 - 42.0 * l4 - 420.0 * l2 - 5040.0) * l * c2 * e
                - 2.0 * SQRT_3 * l * (l6 + 42.0 * l4 - 5040.0) * s * sh
                + 2.0 * (21.0 * (l6 - 720.0) * s - l * (l6 - 42.0 * l4 + 840.0 * l2 - 5040.0) * c) * ch,
        ),
        10 => (
            20.0,
            10,
            4536.0 * l4 * e - 13.5 * (l6 - 20160.0) * l * s2 * e
                + (l8 - 72.0 * l6 - 1512.0 * l4 - 60480.0 * l2 + 362880.0) * c2 * e
                - SQRT_3 * (l8 + 72.0 * l6 - 60480.0 * l2 - 362880.0) * s * sh
                + ch * (27.0 * l * (l6 - 20160.0) * s
                    - (l8 - 72.0 * l6 + 3024.0 * l4 - 60480.0 * l2 + 362880.0) * c),
        ),
        12 => (
            12.0,
            12,
            23760.0 * (l6 - 5040.0) * e - 33.0 * l3 * (l6 - 151200.0) * s2 * e
                + 2.0
                    * (l10 - 110.0 * l8 - 3960.0 * l6 - 332640.0 * l4 + 6652800.0 * l2 + 19958400.0)
                    * c2
                    * e
                - 2.0 * SQRT_3 * l2 * (l8 + 110.0 * l6 - 332640.0 * l2 - 6652800.0) * s * sh
                + 2.0
                    * ch
                    * (33.0 * l3 * (l6 - 151200.0) * s
                        - (l10 - 110.0 * l8 + 7920.0 * l6 - 332640.0 * l4 + 6652800.0 * l2
                            - 39916800.0)
                            * c),
        ),
        _ => unreachable!("power validated by caller"),
    };
    k * md.norm / (l.powi(q) * md.denom) * inner
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorKind {
    /// `β`: Galerkin matrix of `d²/dx²`.
    SecondDerivative,
    /// `γ`: Galerkin matrix of `d⁴/dx⁴`.
    FourthDerivative,
    /// Diagonal `-λ_n⁶` of `d⁶/dx⁶`.
    SixthDerivative,
    /// Assembled right-hand operator of a Galerkin system.
    System,
}

/// Dense Galerkin matrix for one parity.
///
/// For derivative kinds `entries[(n-1, m-1)] = ⟨ψ_n⁽ᵏ⁾, ψ_m⟩`: row index is
/// the differentiated mode. `zero_row` holds `⟨ψ_n⁽ᵏ⁾, 1⟩` when nonzero (even
/// fourth derivative only).
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    pub parity: Parity,
    pub kind: OperatorKind,
    pub entries: DMatrix<f64>,
    pub zero_row: Option<Vec<f64>>,
}

impl OperatorMatrix {
    pub fn size(&self) -> usize {
        self.entries.nrows()
    }

    /// Row `n` (1-based), i.e. the expansion of `ψ_n⁽ᵏ⁾`.
    pub fn row(&self, n: usize) -> Vec<f64> {
        self.entries.row(n - 1).iter().copied().collect()
    }
}

/// Assembles the `M × M` Galerkin matrix of the requested derivative.
pub fn operator_matrix(basis: &Basis, parity: Parity, kind: OperatorKind) -> Result<OperatorMatrix> {
    let modes = basis.modes(parity);
    let size = modes.len();
    let entry: fn(&Mode, &Mode) -> f64 = match kind {
        OperatorKind::SecondDerivative => beta_modes,
        OperatorKind::FourthDerivative => gamma_modes,
        OperatorKind::SixthDerivative => {
            let diag: Vec<f64> = modes.iter().map(|m| -m.lambda.powi(6)).collect();
            return Ok(OperatorMatrix {
                parity,
                kind,
                entries: DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag)),
                zero_row: None,
            });
        }
        OperatorKind::System => {
            return Err(Error::Stepping(
                "system matrices are assembled by the galerkin module".into(),
            ))
        }
    };
    let rows: Vec<Vec<f64>> = modes
        .par_iter()
        .map(|mn| modes.iter().map(|mm| entry(mn, mm)).collect())
        .collect();
    let entries = DMatrix::from_fn(size, size, |i, j| rows[i][j]);
    if entries.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("operator matrix"));
    }
    let zero_row = (kind == OperatorKind::FourthDerivative && parity == Parity::Even)
        .then(|| modes.iter().map(gamma_zero).collect());
    Ok(OperatorMatrix {
        parity,
        kind,
        entries,
        zero_row,
    })
}

/// Spectral coefficients `(u_0^c, {u_n^c}, {u_n^s})` of a function in a
/// basis of order `M`. Synthesis follows
/// `u = ½u_0^c + Σ u_n^c ψ_n^c + Σ u_n^s ψ_n^s`; the constant mode is kept
/// un-normalized (`ψ_0^c = 1`) with `u_0^c = ∫u`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSet {
    pub order: usize,
    pub u0c: f64,
    pub uc: Vec<f64>,
    pub us: Vec<f64>,
}

impl CoefficientSet {
    pub fn zeros(order: usize) -> Self {
        Self {
            order,
            u0c: 0.0,
            uc: vec![0.0; order],
            us: vec![0.0; order],
        }
    }

    /// Unit coefficient on mode `(parity, m)`. `(even, 0)` sets `u0c = 2`
    /// so that the synthesized function is exactly `ψ_0^c = 1`.
    pub fn unit(order: usize, parity: Parity, m: usize) -> Result<Self> {
        let mut out = Self::zeros(order);
        match (parity, m) {
            (Parity::Even, 0) => out.u0c = 2.0,
            (_, 0) => return Err(Error::InvalidMode { parity, index: 0 }),
            (_, m) if m > order => {
                return Err(Error::ModeNotInBasis {
                    parity,
                    index: m,
                    order,
                })
            }
            (Parity::Even, m) => out.uc[m - 1] = 1.0,
            (Parity::Odd, m) => out.us[m - 1] = 1.0,
        }
        Ok(out)
    }

    fn check(&self, basis: &Basis) -> Result<()> {
        if self.order != basis.order() {
            return Err(Error::Dimension {
                expected: basis.order(),
                got: self.order,
            });
        }
        Ok(())
    }

    /// `u(x)`.
    pub fn synthesize(&self, basis: &Basis, x: f64) -> Result<f64> {
        self.synthesize_derivative(basis, x, 0)
    }

    /// `u⁽ᵏ⁾(x)` by term-wise differentiation.
    pub fn synthesize_derivative(&self, basis: &Basis, x: f64, k: usize) -> Result<f64> {
        self.check(basis)?;
        if !(-1.0..=1.0).contains(&x) {
            return Err(Error::OutsideDomain(x));
        }
        if k > crate::eigenbasis::MAX_DERIVATIVE {
            return Err(Error::DerivativeOrder(k));
        }
        let mut acc = if k == 0 { 0.5 * self.u0c } else { 0.0 };
        // smallest terms first
        for (mode, (&c, &s)) in basis
            .modes(Parity::Even)
            .iter()
            .zip(basis.modes(Parity::Odd))
            .zip(self.uc.iter().zip(&self.us))
            .rev()
        {
            let (me, mo) = mode;
            if c != 0.0 {
                acc += c * me.eval(x, k);
            }
            if s != 0.0 {
                acc += s * mo.eval(x, k);
            }
        }
        Ok(acc)
    }

    /// Coefficients of an even polynomial `Σ a_p x^p` (`p` even, `≤ 12`)
    /// from the closed-form `χ` expansions.
    pub fn from_even_polynomial(basis: &Basis, terms: &[(u32, f64)]) -> Result<Self> {
        let mut out = Self::zeros(basis.order());
        for &(p, a) in terms {
            if p % 2 == 1 || p > 12 {
                return Err(Error::ForcingPower(p));
            }
            out.u0c += a * 2.0 / (p as f64 + 1.0);
            if p == 0 {
                continue;
            }
            for (slot, md) in out.uc.iter_mut().zip(basis.modes(Parity::Even)) {
                *slot += a * chi_mode(md, p);
            }
        }
        Ok(out)
    }

    pub fn max_abs(&self) -> f64 {
        self.uc
            .iter()
            .chain(&self.us)
            .fold(self.u0c.abs(), |acc, v| acc.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.u0c.is_finite() && self.uc.iter().chain(&self.us).all(|v| v.is_finite())
    }
}

/// Projects `f` onto the basis by adaptive quadrature (tolerance `1e-12`).
pub fn project<F>(f: F, basis: &Basis) -> Result<CoefficientSet>
where
    F: Fn(f64) -> f64 + Sync,
{
    let opts = QuadOptions::default();
    let u0c = integrate(&f, &opts)?;
    let coeffs = |parity: Parity| -> Result<Vec<f64>> {
        basis
            .modes(parity)
            .par_iter()
            .map(|md| integrate(|x| f(x) * md.eval(x, 0), &opts.with_wavenumber(md.lambda)))
            .collect()
    };
    Ok(CoefficientSet {
        order: basis.order(),
        u0c,
        uc: coeffs(Parity::Even)?,
        us: coeffs(Parity::Odd)?,
    })
}
