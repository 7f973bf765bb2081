//! Brute-force verification by quadrature.
//!
//! [`OracleMode`] evaluates eigenfunctions from the product form
//!
//! ```text
//!     ψ^c ∝ A[-cos(λ/2) sinh h · sin(λx/2) sinh hx + sin(λ/2) cosh h · cos(λx/2) cosh hx] + cos λx
//!     ψ^s ∝ A[-cos(λ/2) cosh h · sin(λx/2) cosh hx + sin(λ/2) sinh h · cos(λx/2) sinh hx] + sin λx
//! ```
//!
//! with `h = √3λ/2`, derivatives by the Leibniz rule and the normalization
//! constant by quadrature. None of it goes through the complex-exponential
//! evaluator in [`crate::eigenbasis`] or the closed forms in
//! [`crate::coefficients`]; only the eigenvalues are shared.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coefficients::{self, published, CoefficientSet, CHI_POWERS};
use crate::eigenbasis::{Basis, Parity, SQRT_3};
use crate::error::{Error, Result};
use crate::galerkin::BvpSpec;
use crate::quadrature::{integrate, QuadOptions};

/// Quadrature tolerance for all verification integrals.
pub const QUAD_TOL: f64 = 1e-12;

/// Pass threshold on the relative discrepancy.
pub const THRESHOLD: f64 = 1e-8;

/// `⟨f, g⟩` with panel density set by `wavenumber`.
pub fn inner_product<F, G>(f: F, g: G, wavenumber: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let opts = QuadOptions::default().with_tol(tol).with_wavenumber(wavenumber);
    crate::quadrature::inner_product(f, g, &opts)
}

/// Independently evaluated eigenfunction.
#[derive(Clone, Debug)]
pub struct OracleMode {
    pub parity: Parity,
    pub index: usize,
    pub lambda: f64,
    /// Bracket amplitude `A·e^{2h}`; the hyperbolic factors below carry the
    /// matching `e^{-h}` each.
    amp: f64,
    norm: f64,
}

impl OracleMode {
    pub fn new(parity: Parity, index: usize, lambda: f64) -> Result<Self> {
        let a = SQRT_3 * lambda;
        let e = (-a).exp();
        let (s, c) = lambda.sin_cos();
        // (cos λ ∓ cosh 2h)·e^{-2h}
        let cosh_scaled = 0.5 * (1.0 + e * e);
        let amp = match parity {
            Parity::Even => 4.0 * s / (c * e - cosh_scaled),
            Parity::Odd => 4.0 * c / (c * e + cosh_scaled),
        };
        let mut md = Self {
            parity,
            index,
            lambda,
            amp,
            norm: 1.0,
        };
        let sq = integrate(
            |x| md.raw(x, 0).powi(2),
            &QuadOptions::default().with_tol(1e-13).with_wavenumber(2.0 * lambda),
        )?;
        let sign = match parity {
            Parity::Even => -1.0,
            Parity::Odd => 1.0,
        };
        md.norm = sign / sq.sqrt();
        Ok(md)
    }

    /// `d^k/dx^k` of the unnormalized eigenfunction.
    fn raw(&self, x: f64, k: usize) -> f64 {
        let l = self.lambda;
        let w = 0.5 * l;
        let h = 0.5 * SQRT_3 * l;
        // sinh(hx)e^{-h}, cosh(hx)e^{-h}
        let (p, q) = ((h * (x - 1.0)).exp(), (-h * (x + 1.0)).exp());
        let (shx, chx) = (0.5 * (p - q), 0.5 * (p + q));
        let (sh, ch) = (0.5 * (1.0 - (-2.0 * h).exp()), 0.5 * (1.0 + (-2.0 * h).exp()));
        let (sw, cw) = w.sin_cos();
        // d^j of sin(wx) / cos(wx) and of the scaled sinh / cosh
        let trig = |cosine: bool, j: usize| {
            let phase = w * x + j as f64 * FRAC_PI_2;
            w.powi(j as i32) * if cosine { phase.cos() } else { phase.sin() }
        };
        let hyp = |hcosh: bool, j: usize| {
            let swap = j % 2 == 1;
            h.powi(j as i32) * if hcosh ^ swap { chx } else { shx }
        };
        let product = |cosine: bool, hcosh: bool| -> f64 {
            let mut binom = 1.0;
            let mut acc = 0.0;
            for j in 0..=k {
                acc += binom * trig(cosine, j) * hyp(hcosh, k - j);
                binom = binom * (k - j) as f64 / (j + 1) as f64;
            }
            acc
        };
        let phase = l * x + k as f64 * FRAC_PI_2;
        let lk = l.powi(k as i32);
        match self.parity {
            Parity::Even => {
                self.amp * (-cw * sh * product(false, false) + sw * ch * product(true, true))
                    + lk * phase.cos()
            }
            Parity::Odd => {
                self.amp * (-cw * ch * product(false, true) + sw * sh * product(true, false))
                    + lk * phase.sin()
            }
        }
    }

    /// `ψ⁽ᵏ⁾(x)`.
    pub fn eval(&self, x: f64, k: usize) -> f64 {
        self.norm * self.raw(x, k)
    }
}

/// Oracle modes for every `(parity, m ≥ 1)` of a basis.
#[derive(Clone, Debug)]
pub struct OracleBasis {
    pub even: Vec<OracleMode>,
    pub odd: Vec<OracleMode>,
}

impl OracleBasis {
    pub fn new(basis: &Basis) -> Result<Self> {
        let build = |parity| -> Result<Vec<OracleMode>> {
            basis
                .modes(parity)
                .par_iter()
                .map(|m| OracleMode::new(parity, m.index, m.lambda))
                .collect()
        };
        Ok(Self {
            even: build(Parity::Even)?,
            odd: build(Parity::Odd)?,
        })
    }

    pub fn mode(&self, parity: Parity, m: usize) -> Result<&OracleMode> {
        let list = match parity {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        };
        if m == 0 {
            return Err(Error::ZeroIndex(0));
        }
        list.get(m - 1).ok_or(Error::ModeNotInBasis {
            parity,
            index: m,
            order: list.len(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormulaKind {
    Beta,
    Gamma,
    Chi,
}

impl fmt::Display for FormulaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Beta => "beta",
            Self::Gamma => "gamma",
            Self::Chi => "chi",
        })
    }
}

/// Which closed form was checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// The form used by the solver.
    Implemented,
    /// The form as commonly printed, kept to document its error.
    Published,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub formula: FormulaKind,
    pub variant: Variant,
    pub parity: Parity,
    pub n: Option<usize>,
    pub m: usize,
    pub p: Option<u32>,
    pub closed_form: f64,
    pub quadrature: f64,
    pub discrepancy: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl VerificationReport {
    fn new(
        formula: FormulaKind,
        variant: Variant,
        parity: Parity,
        n: Option<usize>,
        m: usize,
        p: Option<u32>,
        closed_form: f64,
        quadrature: f64,
    ) -> Self {
        let discrepancy = (closed_form - quadrature).abs() / quadrature.abs().max(1e-30);
        Self {
            formula,
            variant,
            parity,
            n,
            m,
            p,
            closed_form,
            quadrature,
            discrepancy,
            threshold: THRESHOLD,
            pass: discrepancy < THRESHOLD,
        }
    }

    pub fn label(&self) -> String {
        let mut s = format!("{}^{}", self.formula, self.parity.letter());
        if let Some(p) = self.p {
            s.push_str(&format!("{{{p}}}_{}", self.m));
        } else if let Some(n) = self.n {
            s.push_str(&format!("_{n},{}", self.m));
        }
        if self.variant == Variant::Published {
            s.push_str(" (published)");
        }
        s
    }
}

fn oracle_quad(kind: FormulaKind, o: &OracleBasis, parity: Parity, n: usize, m: usize, p: u32) -> Result<f64> {
    let opts = |k: f64| QuadOptions::default().with_tol(QUAD_TOL).with_wavenumber(k);
    match kind {
        FormulaKind::Beta | FormulaKind::Gamma => {
            let order = if kind == FormulaKind::Beta { 2 } else { 4 };
            let mn = o.mode(parity, n)?;
            if m == 0 {
                return integrate(|x| mn.eval(x, order), &opts(mn.lambda));
            }
            let mm = o.mode(parity, m)?;
            integrate(|x| mn.eval(x, order) * mm.eval(x, 0), &opts(mn.lambda + mm.lambda))
        }
        FormulaKind::Chi => {
            let mm = o.mode(Parity::Even, m)?;
            integrate(|x| x.powi(p as i32) * mm.eval(x, 0), &opts(mm.lambda))
        }
    }
}

/// Compares one implemented closed form against quadrature. For `Chi`,
/// `n` is ignored and `m_or_p = (m, p)`.
pub fn verify_formula(
    basis: &Basis,
    oracle: &OracleBasis,
    kind: FormulaKind,
    parity: Parity,
    n: usize,
    m: usize,
    p: u32,
) -> Result<VerificationReport> {
    let q = oracle_quad(kind, oracle, parity, n, m, p)?;
    let (cf, n, p) = match kind {
        FormulaKind::Beta => (coefficients::beta(basis, parity, n, m)?, Some(n), None),
        FormulaKind::Gamma => (coefficients::gamma(basis, parity, n, m)?, Some(n), None),
        FormulaKind::Chi => (coefficients::chi(basis, p, m)?, None, Some(p)),
    };
    let parity = if kind == FormulaKind::Chi { Parity::Even } else { parity };
    Ok(VerificationReport::new(kind, Variant::Implemented, parity, n, m, p, cf, q))
}

fn verify_published(
    basis: &Basis,
    oracle: &OracleBasis,
    kind: FormulaKind,
    parity: Parity,
    n: usize,
    m: usize,
    p: u32,
) -> Result<VerificationReport> {
    let q = oracle_quad(kind, oracle, parity, n, m, p)?;
    let (cf, n, p) = match (kind, parity) {
        (FormulaKind::Beta, Parity::Even) => (published::beta_even_diagonal(basis, n)?, Some(n), None),
        (FormulaKind::Beta, Parity::Odd) => (published::beta_odd(basis, n, m)?, Some(n), None),
        (FormulaKind::Chi, _) => (published::chi12(basis, m)?, None, Some(12)),
        _ => unreachable!("no published variant"),
    };
    Ok(VerificationReport::new(kind, Variant::Published, parity, n, m, p, cf, q))
}

/// Result of [`verify_sweep`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationSweep {
    pub max_index: usize,
    pub reports: Vec<VerificationReport>,
    /// Printed variants that disagree with quadrature; informational.
    pub documented_discrepancies: Vec<VerificationReport>,
    pub checked: usize,
    pub failed: usize,
    pub pass: bool,
}

#[derive(Clone, Copy)]
enum Job {
    Implemented(FormulaKind, Parity, usize, usize, u32),
    Published(FormulaKind, Parity, usize, usize, u32),
}

/// Every `β`, `γ` (incl. `γ_n0`) and `χ` entry with indices up to
/// `max_index`, plus the printed variants.
pub fn verify_sweep(basis: &Basis, max_index: usize) -> Result<VerificationSweep> {
    if max_index > basis.order() {
        return Err(Error::ModeNotInBasis {
            parity: Parity::Even,
            index: max_index,
            order: basis.order(),
        });
    }
    let mut jobs = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        for n in 1..=max_index {
            if parity == Parity::Even {
                jobs.push(Job::Implemented(FormulaKind::Gamma, parity, n, 0, 0));
                jobs.push(Job::Published(FormulaKind::Beta, parity, n, n, 0));
            }
            for m in 1..=max_index {
                jobs.push(Job::Implemented(FormulaKind::Beta, parity, n, m, 0));
                jobs.push(Job::Implemented(FormulaKind::Gamma, parity, n, m, 0));
                if parity == Parity::Odd {
                    jobs.push(Job::Published(FormulaKind::Beta, parity, n, m, 0));
                }
            }
        }
    }
    for m in 1..=max_index {
        for p in CHI_POWERS {
            jobs.push(Job::Implemented(FormulaKind::Chi, Parity::Even, 0, m, p));
        }
        jobs.push(Job::Published(FormulaKind::Chi, Parity::Even, 0, m, 12));
    }
    // the oracle only needs modes up to max_index
    let small = if max_index == 0 { None } else { Some(Basis::new(max_index)?) };
    let oracle = match &small {
        Some(b) => OracleBasis::new(b)?,
        None => OracleBasis {
            even: Vec::new(),
            odd: Vec::new(),
        },
    };
    let results: Vec<(bool, VerificationReport)> = jobs
        .par_iter()
        .map(|job| match *job {
            Job::Implemented(k, par, n, m, p) => {
                verify_formula(basis, &oracle, k, par, n, m, p).map(|r| (true, r))
            }
            Job::Published(k, par, n, m, p) => {
                verify_published(basis, &oracle, k, par, n, m, p).map(|r| (false, r))
            }
        })
        .collect::<Result<_>>()?;
    let mut reports = Vec::new();
    let mut documented = Vec::new();
    for (implemented, r) in results {
        if implemented {
            reports.push(r);
        } else if !r.pass {
            documented.push(r);
        }
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    Ok(VerificationSweep {
        max_index,
        checked: reports.len(),
        failed,
        pass: failed == 0,
        reports,
        documented_discrepancies: documented,
    })
}

/// `max |a₆u⁽⁶⁾ + a₄u⁽⁴⁾ + a₂u'' + a₀u - f|` over `points` interior points
/// `x_i = -1 + 2i/(points + 1)`.
pub fn residual_scan(spec: &BvpSpec, solution: &CoefficientSet, basis: &Basis, points: usize) -> Result<f64> {
    let xs: Vec<f64> = (1..=points)
        .map(|i| -1.0 + 2.0 * i as f64 / (points + 1) as f64)
        .collect();
    let res: Vec<f64> = xs
        .par_iter()
        .map(|&x| -> Result<f64> {
            let mut lhs = 0.0;
            for (k, a) in [(6, spec.a6), (4, spec.a4), (2, spec.a2), (0, spec.a0)] {
                if a != 0.0 {
                    lhs += a * solution.synthesize_derivative(basis, x, k)?;
                }
            }
            Ok((lhs - spec.forcing_at(x)).abs())
        })
        .collect::<Result<_>>()?;
    Ok(res.into_iter().fold(0.0, f64::max))
}

/// Gram matrix `⟨ψ_a, ψ_b⟩` of the first `count` modes of one parity,
/// evaluated with the basis under test.
pub fn gram(basis: &Basis, parity: Parity, count: usize) -> Result<DMatrix<f64>> {
    let modes = &basis.modes(parity)[..count.min(basis.order())];
    let n = modes.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let vals: Vec<f64> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (a, b) = (&modes[i], &modes[j]);
            inner_product(|x| a.eval(x, 0), |x| b.eval(x, 0), a.lambda + b.lambda, QUAD_TOL)
        })
        .collect::<Result<_>>()?;
    let mut g = DMatrix::zeros(n, n);
    for (&(i, j), v) in pairs.iter().zip(vals) {
        g[(i, j)] = v;
        g[(j, i)] = v;
    }
    Ok(g)
}

/// `max |⟨ψ_a^c, ψ_b^s⟩|` over the first `count` modes (including `ψ_0^c`).
pub fn cross_parity_max(basis: &Basis, count: usize) -> Result<f64> {
    let k = count.min(basis.order());
    let even = &basis.modes(Parity::Even)[..k];
    let odd = &basis.modes(Parity::Odd)[..k];
    let mut pairs = Vec::new();
    for b in odd {
        pairs.push((None, b));
        for a in even {
            pairs.push((Some(a), b));
        }
    }
    let vals: Vec<f64> = pairs
        .par_iter()
        .map(|&(a, b)| match a {
            Some(a) => inner_product(|x| a.eval(x, 0), |x| b.eval(x, 0), a.lambda + b.lambda, QUAD_TOL),
            None => inner_product(|_| 1.0, |x| b.eval(x, 0), b.lambda, QUAD_TOL),
        })
        .collect::<Result<_>>()?;
    Ok(vals.into_iter().fold(0.0, |acc, v| acc.max(v.abs())))
}

/// `max |⟨ψ_n⁽⁶⁾, ψ_m⟩ - ⟨ψ_n, ψ_m⁽⁶⁾⟩| / λ_max⁶` over `n, m ≤ count`.
pub fn self_adjointness(basis: &Basis, parity: Parity, count: usize) -> Result<f64> {
    let modes = &basis.modes(parity)[..count.min(basis.order())];
    let Some(last) = modes.last() else {
        return Ok(0.0);
    };
    let scale = last.lambda.powi(6);
    let pairs: Vec<(usize, usize)> = (0..modes.len())
        .flat_map(|i| (0..modes.len()).map(move |j| (i, j)))
        .collect();
    let vals: Vec<f64> = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<f64> {
            let (a, b) = (&modes[i], &modes[j]);
            let k = a.lambda + b.lambda;
            let l = inner_product(|x| a.eval(x, 6), |x| b.eval(x, 0), k, QUAD_TOL)?;
            let r = inner_product(|x| a.eval(x, 0), |x| b.eval(x, 6), k, QUAD_TOL)?;
            Ok((l - r).abs() / scale)
        })
        .collect::<Result<_>>()?;
    Ok(vals.into_iter().fold(0.0, f64::max))
}

/// L² error `‖f - P_M f‖` of projecting `f` onto bases of each order.
pub fn projection_errors<F>(f: F, orders: &[usize]) -> Result<Vec<f64>>
where
    F: Fn(f64) -> f64 + Sync,
{
    orders
        .iter()
        .map(|&m| {
            let basis = Basis::new(m)?;
            let c = coefficients::project(&f, &basis)?;
            let k = basis.modes(Parity::Even)[m - 1].lambda.max(basis.modes(Parity::Odd)[m - 1].lambda);
            let sq = integrate(
                |x| (f(x) - c.synthesize(&basis, x).expect("x in domain")).powi(2),
                &QuadOptions::default().with_tol(1e-14).with_wavenumber(k),
            )?;
            Ok(sq.max(0.0).sqrt())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_modes_match_basis() {
        let b = Basis::new(12).unwrap();
        let o = OracleBasis::new(&b).unwrap();
        for parity in [Parity::Even, Parity::Odd] {
            for m in [1, 5, 12] {
                let om = o.mode(parity, m).unwrap();
                for &x in &[-1.0, -0.3, 0.0, 0.77, 1.0] {
                    for k in 0..=6 {
                        let want = b.eval_psi(parity, m, x, k).unwrap();
                        let got = om.eval(x, k);
                        let scale = om.lambda.powi(k as i32);
                        assert!((got - want).abs() < 1e-10 * scale, "{parity} {m} {x} {k}: {got} {want}");
                    }
                }
            }
        }
    }

    #[test]
    fn inner_product_examples() {
        let b = Basis::new(2).unwrap();
        let c1 = b.mode(Parity::Even, 1).unwrap();
        let s2 = b.mode(Parity::Odd, 2).unwrap();
        let v = inner_product(|x| c1.eval(x, 0), |x| c1.eval(x, 0), c1.lambda, QUAD_TOL).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        let v = inner_product(|x| c1.eval(x, 0), |x| s2.eval(x, 0), c1.lambda + s2.lambda, QUAD_TOL).unwrap();
        assert!(v.abs() < 1e-12);
        let v = inner_product(|x| x, |x| x, 0.0, QUAD_TOL).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn single_reports() {
        let b = Basis::new(7).unwrap();
        let o = OracleBasis::new(&b).unwrap();
        let r = verify_formula(&b, &o, FormulaKind::Beta, Parity::Even, 5, 7, 0).unwrap();
        assert!(r.pass, "{r:?}");
        let r = verify_formula(&b, &o, FormulaKind::Gamma, Parity::Even, 3, 0, 0).unwrap();
        assert!(r.pass, "{r:?}");
        let r = verify_formula(&b, &o, FormulaKind::Chi, Parity::Even, 0, 1, 12).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.label(), "chi^c{12}_1");
        let r = verify_published(&b, &o, FormulaKind::Chi, Parity::Even, 0, 1, 12).unwrap();
        assert!(!r.pass);
    }

    #[test]
    fn empty_sweep_passes() {
        let b = Basis::new(1).unwrap();
        let s = verify_sweep(&b, 0).unwrap();
        assert!(s.pass && s.reports.is_empty() && s.documented_discrepancies.is_empty());
    }

    #[test]
    fn residual_of_zero_problem() {
        let b = Basis::new(5).unwrap();
        let spec = BvpSpec {
            a6: 1.0,
            a4: 0.0,
            a2: 0.0,
            a0: 1.0,
            forcing: Vec::new(),
        };
        assert_eq!(residual_scan(&spec, &CoefficientSet::zeros(5), &b, 11).unwrap(), 0.0);
    }

    #[test]
    fn residual_of_single_mode() {
        // u = ψ_3^c solves u⁽⁶⁾ + λ⁶u = 0
        let b = Basis::new(5).unwrap();
        let l6 = b.mode(Parity::Even, 3).unwrap().lambda.powi(6);
        let spec = BvpSpec {
            a6: 1.0,
            a4: 0.0,
            a2: 0.0,
            a0: l6,
            forcing: Vec::new(),
        };
        let u = CoefficientSet::unit(5, Parity::Even, 3).unwrap();
        assert!(residual_scan(&spec, &u, &b, 51).unwrap() < 1e-9 * l6);
    }
}
