//! Steady Galerkin solves and the semi-discrete evolution system.
//!
//! A steady problem `a₆u⁽⁶⁾ + a₄u⁽⁴⁾ + a₂u'' + a₀u = f` is projected onto
//! `ψ_ℓ`, which gives for `ℓ ≥ 1`
//!
//! ```text
//!     Σ_n [ (a₀ - a₆λ_n⁶) δ_nℓ + a₄γ_nℓ + a₂β_nℓ ] u_n = f_ℓ
//! ```
//!
//! and for the constant mode `a₀u₀ + a₄ Σ_n γ_n0 u_n = ∫f`.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::coefficients::{operator_matrix, CoefficientSet, OperatorKind};
use crate::eigenbasis::{Basis, Parity};
use crate::error::{Error, Result};
use crate::linalg::{solve_general, solve_symmetric, SolvePath};

/// Relative size below which a diagonal entry counts as resonant.
pub const RESONANCE_TOL: f64 = 1e-6;

/// Relative asymmetry tolerated before a system is treated as nonsymmetric.
pub const SYMMETRY_TOL: f64 = 1e-9;

/// `a₆u⁽⁶⁾ + a₄u⁽⁴⁾ + a₂u'' + a₀u = Σ c_p x^p` with the boundary
/// conditions of the basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BvpSpec {
    pub a6: f64,
    pub a4: f64,
    pub a2: f64,
    pub a0: f64,
    /// `(p, c_p)` pairs, `p` even and at most 12.
    pub forcing: Vec<(u32, f64)>,
}

impl BvpSpec {
    /// `u⁽⁶⁾ + 14400u = f`, exact solution `(x²-1)⁶`.
    pub fn model_i() -> Self {
        Self {
            a6: 1.0,
            a4: 0.0,
            a2: 0.0,
            a0: 14400.0,
            forcing: vec![
                (2, 216000.0),
                (4, -691200.0),
                (6, 377280.0),
                (8, 216000.0),
                (10, -86400.0),
                (12, 14400.0),
            ],
        }
    }

    /// `u⁽⁶⁾ - 5544u'' - 199584u = f`, exact solution `(x²-1)⁶`.
    pub fn model_ii() -> Self {
        Self {
            a6: 1.0,
            a4: 0.0,
            a2: -5544.0,
            a0: -199584.0,
            forcing: vec![
                (12, -199584.0),
                (10, 465696.0),
                (4, -574560.0),
                (2, 501984.0),
                (0, -147456.0),
            ],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.a6 == 0.0 {
            return Err(Error::DegenerateOperator);
        }
        if ![self.a6, self.a4, self.a2, self.a0].iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("operator coefficients"));
        }
        for &(p, c) in &self.forcing {
            if p % 2 == 1 || p > 12 {
                return Err(Error::ForcingPower(p));
            }
            if !c.is_finite() {
                return Err(Error::NonFinite("forcing coefficients"));
            }
        }
        Ok(())
    }

    pub fn forcing_at(&self, x: f64) -> f64 {
        self.forcing.iter().map(|&(p, c)| c * x.powi(p as i32)).sum()
    }

    /// `∫₋₁¹ f dx` in exact rational arithmetic (the coefficients are taken
    /// as the exact binary values of the doubles).
    pub fn forcing_integral(&self) -> BigRational {
        self.forcing
            .iter()
            .map(|&(p, c)| {
                let c = BigRational::from_float(c).unwrap_or_else(BigRational::zero);
                c * BigRational::new(BigInt::from(2), BigInt::from(p + 1))
            })
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// True when the operator has no second or fourth derivative term.
    pub fn is_diagonal(&self) -> bool {
        self.a4 == 0.0 && self.a2 == 0.0
    }
}

/// `(x - 1)⁶(x + 1)⁶`, the exact solution of both model problems.
pub fn model_exact(x: f64) -> f64 {
    (x * x - 1.0).powi(6)
}

#[derive(Clone, Debug)]
pub struct SteadySolution {
    pub coeffs: CoefficientSet,
    pub path: SolvePath,
    /// LDLᵀ pivots of the even block (empty for diagonal systems and when
    /// the factorization was not attempted).
    pub pivots: Vec<f64>,
}

fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Model problem I, solved as a diagonal system.
pub fn solve_model_i(basis: &Basis) -> Result<CoefficientSet> {
    Ok(solve_diagonal(&BvpSpec::model_i(), basis)?.coeffs)
}

/// Model problem II.
pub fn solve_model_ii(basis: &Basis) -> Result<SteadySolution> {
    solve_steady(&BvpSpec::model_ii(), basis)
}

fn forcing_coefficients(spec: &BvpSpec, basis: &Basis) -> Result<CoefficientSet> {
    let f = CoefficientSet::from_even_polynomial(basis, &spec.forcing)?;
    if !f.is_finite() {
        return Err(Error::NonFinite("forcing projection"));
    }
    Ok(f)
}

fn solve_diagonal(spec: &BvpSpec, basis: &Basis) -> Result<SteadySolution> {
    let f = forcing_coefficients(spec, basis)?;
    let mut out = CoefficientSet::zeros(basis.order());
    for (slot, (md, &rhs)) in out.uc.iter_mut().zip(basis.modes(Parity::Even).iter().zip(&f.uc)) {
        let l6 = md.lambda.powi(6);
        let diag = spec.a0 - spec.a6 * l6;
        if diag.abs() < RESONANCE_TOL * l6 {
            return Err(Error::Resonance {
                index: md.index,
                diagonal: diag,
                scale: l6,
            });
        }
        *slot = rhs / diag;
    }
    out.u0c = constant_mode(spec, &out, &[], &spec.forcing_integral())?;
    finish(out, SolvePath::Ldlt, Vec::new())
}

/// `u₀` from the constant-mode balance `a₀u₀ + a₄Σγ_n0 u_n = ∫f`. When
/// `a₀ = 0` the constant is free and is fixed to zero after checking that
/// the balance holds.
fn constant_mode(
    spec: &BvpSpec,
    u: &CoefficientSet,
    gamma0: &[f64],
    f0: &BigRational,
) -> Result<f64> {
    let coupling: f64 = gamma0.iter().zip(&u.uc).map(|(g, v)| g * v).sum();
    let scale: f64 = gamma0.iter().zip(&u.uc).map(|(g, v)| (g * v).abs()).sum();
    if spec.a0 != 0.0 {
        if coupling == 0.0 {
            return Ok(to_f64(&(f0 / BigRational::from_float(spec.a0).expect("finite"))));
        }
        return Ok((to_f64(f0) - spec.a4 * coupling) / spec.a0);
    }
    let r = to_f64(f0) - spec.a4 * coupling;
    let tol = 1e-8 * (to_f64(f0).abs() + spec.a4.abs() * scale).max(1.0);
    if r.abs() > tol {
        return Err(Error::Inconsistent(r));
    }
    Ok(0.0)
}

fn finish(out: CoefficientSet, path: SolvePath, pivots: Vec<f64>) -> Result<SteadySolution> {
    if !out.is_finite() {
        return Err(Error::NonFinite("steady solution"));
    }
    Ok(SteadySolution {
        coeffs: out,
        path,
        pivots,
    })
}

/// Assembles the even-block matrix `A[ℓ, n]` of a steady problem.
pub fn steady_matrix(spec: &BvpSpec, basis: &Basis) -> Result<(DMatrix<f64>, Vec<f64>)> {
    let m = basis.order();
    let mut a = DMatrix::zeros(m, m);
    let mut gamma0 = Vec::new();
    if spec.a2 != 0.0 {
        let beta = operator_matrix(basis, Parity::Even, OperatorKind::SecondDerivative)?;
        a += beta.entries.transpose() * spec.a2;
    }
    if spec.a4 != 0.0 {
        let gamma = operator_matrix(basis, Parity::Even, OperatorKind::FourthDerivative)?;
        a += gamma.entries.transpose() * spec.a4;
        gamma0 = gamma.zero_row.unwrap_or_default();
    }
    for (i, md) in basis.modes(Parity::Even).iter().enumerate() {
        a[(i, i)] += spec.a0 - spec.a6 * md.lambda.powi(6);
    }
    if a.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("steady system matrix"));
    }
    Ok((a, gamma0))
}

/// General constant-coefficient steady solve. Symmetric systems go through
/// LDLᵀ (with a pivoted fallback); a fourth-derivative term makes the
/// system nonsymmetric and it is solved by pivoted LU.
pub fn solve_steady(spec: &BvpSpec, basis: &Basis) -> Result<SteadySolution> {
    spec.validate()?;
    if spec.is_diagonal() {
        return solve_diagonal(spec, basis);
    }
    let (a, gamma0) = steady_matrix(spec, basis)?;
    let f = forcing_coefficients(spec, basis)?;
    let rhs = DVector::from_column_slice(&f.uc);
    let asym = (&a - a.transpose()).amax();
    let (x, path, pivots) = if asym <= SYMMETRY_TOL * a.amax() {
        let s = solve_symmetric(&a, &rhs)?;
        (s.x, s.path, s.pivots)
    } else {
        log::info!("system is nonsymmetric (asymmetry {asym:e}); using pivoted LU");
        (solve_general(&a, &rhs)?, SolvePath::PivotedLu, Vec::new())
    };
    let mut out = CoefficientSet::zeros(basis.order());
    out.uc = x.iter().copied().collect();
    out.u0c = constant_mode(spec, &out, &gamma0, &spec.forcing_integral())?;
    finish(out, path, pivots)
}

/// `du/dt = B u'' - T u⁗ + u⁽⁶⁾ + R u + f` projected onto the basis.
///
/// The even block has size `M + 1`; index 0 is the constant mode `u₀`.
/// The reaction coefficient `R` defaults to zero.
#[derive(Clone, Debug)]
pub struct SemiDiscreteSystem {
    pub order: usize,
    pub bond: f64,
    pub tension: f64,
    pub reaction: f64,
    pub even: DMatrix<f64>,
    pub odd: DMatrix<f64>,
    pub forcing_even: DVector<f64>,
    pub forcing_odd: DVector<f64>,
}

pub fn assemble_semi_discrete(
    basis: &Basis,
    bond: f64,
    tension: f64,
    forcing: &CoefficientSet,
) -> Result<SemiDiscreteSystem> {
    assemble_with_reaction(basis, bond, tension, 0.0, forcing)
}

pub fn assemble_with_reaction(
    basis: &Basis,
    bond: f64,
    tension: f64,
    reaction: f64,
    forcing: &CoefficientSet,
) -> Result<SemiDiscreteSystem> {
    let m = basis.order();
    if forcing.order != m {
        return Err(Error::Dimension {
            expected: m,
            got: forcing.order,
        });
    }
    if ![bond, tension, reaction].iter().all(|v| v.is_finite()) {
        return Err(Error::NonFinite("system parameters"));
    }
    let block = |parity: Parity| -> Result<(DMatrix<f64>, Option<Vec<f64>>)> {
        let mut a = DMatrix::zeros(m, m);
        let mut zero_row = None;
        if bond != 0.0 {
            let beta = operator_matrix(basis, parity, OperatorKind::SecondDerivative)?;
            a += beta.entries.transpose() * bond;
        }
        if tension != 0.0 {
            let gamma = operator_matrix(basis, parity, OperatorKind::FourthDerivative)?;
            a -= gamma.entries.transpose() * tension;
            zero_row = gamma.zero_row;
        }
        for (i, md) in basis.modes(parity).iter().enumerate() {
            a[(i, i)] += reaction - md.lambda.powi(6);
        }
        Ok((a, zero_row))
    };
    let (inner, gamma0) = block(Parity::Even)?;
    let mut even = DMatrix::zeros(m + 1, m + 1);
    even.view_mut((1, 1), (m, m)).copy_from(&inner);
    even[(0, 0)] = reaction;
    if let Some(g) = gamma0 {
        for (n, v) in g.into_iter().enumerate() {
            even[(0, n + 1)] = -tension * v;
        }
    }
    let (odd, _) = block(Parity::Odd)?;
    let mut forcing_even = DVector::zeros(m + 1);
    forcing_even[0] = forcing.u0c;
    forcing_even.rows_mut(1, m).copy_from_slice(&forcing.uc);
    let sys = SemiDiscreteSystem {
        order: m,
        bond,
        tension,
        reaction,
        even,
        odd,
        forcing_even,
        forcing_odd: DVector::from_column_slice(&forcing.us),
    };
    if sys.even.iter().chain(sys.odd.iter()).any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("semi-discrete system"));
    }
    Ok(sys)
}

impl SemiDiscreteSystem {
    fn split(&self, u: &CoefficientSet) -> (DVector<f64>, DVector<f64>) {
        let mut e = DVector::zeros(self.order + 1);
        e[0] = u.u0c;
        e.rows_mut(1, self.order).copy_from_slice(&u.uc);
        (e, DVector::from_column_slice(&u.us))
    }

    fn join(&self, e: &DVector<f64>, o: &DVector<f64>) -> CoefficientSet {
        CoefficientSet {
            order: self.order,
            u0c: e[0],
            uc: e.rows(1, self.order).iter().copied().collect(),
            us: o.iter().copied().collect(),
        }
    }

    /// `du/dt` at state `u`.
    pub fn rate(&self, u: &CoefficientSet) -> CoefficientSet {
        let (e, o) = self.split(u);
        self.join(
            &(&self.even * e + &self.forcing_even),
            &(&self.odd * o + &self.forcing_odd),
        )
    }
}

struct ThetaStep {
    lu: nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>,
    explicit: DMatrix<f64>,
}

impl ThetaStep {
    fn new(a: &DMatrix<f64>, dt: f64, theta: f64) -> Result<Self> {
        let n = a.nrows();
        let id = DMatrix::<f64>::identity(n, n);
        let implicit = &id - a * (theta * dt);
        let lu = implicit.lu();
        if n > 0 && !lu.is_invertible() {
            return Err(Error::Singular);
        }
        Ok(Self {
            lu,
            explicit: &id + a * ((1.0 - theta) * dt),
        })
    }

    fn apply(&self, u: &DVector<f64>, f: &DVector<f64>, dt: f64) -> DVector<f64> {
        if u.is_empty() {
            return u.clone();
        }
        let rhs = &self.explicit * u + f * dt;
        self.lu.solve(&rhs).expect("factor checked invertible")
    }
}

/// θ-scheme `(I - θΔt A)u⁺ = (I + (1-θ)Δt A)u + Δt f` with the step matrix
/// factored once. Returns `steps + 1` states, starting with `initial`.
///
/// Aborts with [`Error::Instability`] when the norm outgrows
/// `10(‖u₀‖ + t‖f‖)`, which a dissipative system cannot do.
pub fn evolve(
    system: &SemiDiscreteSystem,
    initial: &CoefficientSet,
    dt: f64,
    steps: usize,
    theta: f64,
) -> Result<Vec<CoefficientSet>> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::Stepping(format!("dt must be positive, got {dt}")));
    }
    if !(0.0..=1.0).contains(&theta) {
        return Err(Error::Stepping(format!("theta must lie in [0, 1], got {theta}")));
    }
    if initial.order != system.order {
        return Err(Error::Dimension {
            expected: system.order,
            got: initial.order,
        });
    }
    let even = ThetaStep::new(&system.even, dt, theta)?;
    let odd = ThetaStep::new(&system.odd, dt, theta)?;
    let (mut e, mut o) = system.split(initial);
    let norm0 = (e.norm_squared() + o.norm_squared()).sqrt();
    let fnorm = (system.forcing_even.norm_squared() + system.forcing_odd.norm_squared()).sqrt();
    let mut out = Vec::with_capacity(steps + 1);
    out.push(initial.clone());
    for step in 1..=steps {
        e = even.apply(&e, &system.forcing_even, dt);
        o = odd.apply(&o, &system.forcing_odd, dt);
        let norm = (e.norm_squared() + o.norm_squared()).sqrt();
        let bound = 10.0 * (norm0 + step as f64 * dt * fnorm) + f64::MIN_POSITIVE;
        if !norm.is_finite() || norm > bound {
            return Err(Error::Instability { step, norm, bound });
        }
        out.push(system.join(&e, &o));
    }
    Ok(out)
}

/// Per-step amplification `(1 - (1-θ)Δt a) / (1 + θΔt a)` of the decoupled
/// mode `du/dt = -a u`.
pub fn theta_factor(rate: f64, dt: f64, theta: f64) -> f64 {
    (1.0 - (1.0 - theta) * dt * rate) / (1.0 + theta * dt * rate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn model_forcings_reproduce_exact_solution() {
        // a₆u⁽⁶⁾ + a₂u'' + a₀u for u = (x²-1)⁶ by exact polynomial derivatives
        let u = [1.0, 0.0, -6.0, 0.0, 15.0, 0.0, -20.0, 0.0, 15.0, 0.0, -6.0, 0.0, 1.0];
        let deriv = |c: &[f64], k: usize| -> Vec<f64> {
            let mut c = c.to_vec();
            for _ in 0..k {
                c = c.iter().enumerate().skip(1).map(|(i, v)| v * i as f64).collect();
            }
            c
        };
        for spec in [BvpSpec::model_i(), BvpSpec::model_ii()] {
            let mut lhs = vec![0.0; 13];
            for (k, a) in [(6, spec.a6), (4, spec.a4), (2, spec.a2), (0, spec.a0)] {
                for (i, v) in deriv(&u, k).into_iter().enumerate() {
                    lhs[i] += a * v;
                }
            }
            let mut rhs = vec![0.0; 13];
            for &(p, c) in &spec.forcing {
                rhs[p as usize] += c;
            }
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn forcing_integral_is_exact() {
        let q = BvpSpec::model_i().forcing_integral();
        assert_eq!(q, BigRational::new(BigInt::from(14400 * 2048), BigInt::from(3003)));
        let q = BvpSpec::model_ii().forcing_integral();
        assert_eq!(q, BigRational::new(BigInt::from(-199584i64 * 2048), BigInt::from(3003)));
    }

    #[test]
    fn u0c_is_correctly_rounded() {
        let b = Basis::new(3).unwrap();
        assert_eq!(solve_model_i(&b).unwrap().u0c, 2048.0 / 3003.0);
        assert_eq!(solve_model_ii(&b).unwrap().coeffs.u0c, 2048.0 / 3003.0);
    }

    #[test]
    fn general_path_with_diagonal_operator_matches_model_i() {
        let b = Basis::new(30).unwrap();
        let direct = solve_model_i(&b).unwrap();
        let general = solve_steady(&BvpSpec::model_i(), &b).unwrap();
        assert_eq!(direct, general.coeffs);
        assert!(direct.us.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn model_ii_is_negative_definite() {
        let b = Basis::new(40).unwrap();
        let s = solve_model_ii(&b).unwrap();
        assert_eq!(s.path, SolvePath::Ldlt);
        assert_eq!(s.pivots.len(), 40);
        assert!(s.pivots.iter().all(|&d| d < 0.0));
    }

    #[test]
    fn validation() {
        let mut s = BvpSpec::model_i();
        s.a6 = 0.0;
        assert!(matches!(s.validate(), Err(Error::DegenerateOperator)));
        let mut s = BvpSpec::model_i();
        s.forcing.push((3, 1.0));
        assert!(matches!(s.validate(), Err(Error::ForcingPower(3))));
        let mut s = BvpSpec::model_i();
        s.forcing.push((14, 1.0));
        assert!(s.validate().is_err());
    }

    #[test]
    fn resonance_is_detected() {
        let b = Basis::new(3).unwrap();
        let l6 = b.mode(Parity::Even, 2).unwrap().lambda.powi(6);
        let spec = BvpSpec {
            a6: 1.0,
            a4: 0.0,
            a2: 0.0,
            a0: l6,
            forcing: vec![(2, 1.0)],
        };
        assert!(matches!(solve_steady(&spec, &b), Err(Error::Resonance { index: 2, .. })));
    }

    #[test]
    fn constant_mode_gauge_without_reaction() {
        let b = Basis::new(10).unwrap();
        // u⁽⁶⁾ = f with ∫f ≠ 0 has no solution
        let bad = BvpSpec {
            a6: 1.0,
            a4: 0.0,
            a2: 1.0,
            a0: 0.0,
            forcing: vec![(2, 1.0)],
        };
        assert!(matches!(solve_steady(&bad, &b), Err(Error::Inconsistent(_))));
        let ok = BvpSpec {
            forcing: vec![(2, 3.0), (0, -1.0)],
            ..bad
        };
        assert_eq!(solve_steady(&ok, &b).unwrap().coeffs.u0c, 0.0);
    }

    #[test]
    fn fourth_derivative_systems_use_lu() {
        let b = Basis::new(12).unwrap();
        let spec = BvpSpec {
            a6: 1.0,
            a4: 10.0,
            a2: 0.0,
            a0: -50.0,
            forcing: vec![(2, 1.0)],
        };
        let s = solve_steady(&spec, &b).unwrap();
        assert_eq!(s.path, SolvePath::PivotedLu);
        assert!(s.coeffs.is_finite());
    }

    #[test]
    fn semi_discrete_structure() {
        let b = Basis::new(6).unwrap();
        let zero = CoefficientSet::zeros(6);
        let s = assemble_semi_discrete(&b, 0.0, 0.0, &zero).unwrap();
        for (i, md) in b.modes(Parity::Even).iter().enumerate() {
            assert_eq!(s.even[(i + 1, i + 1)], -md.lambda.powi(6));
        }
        let off = s.even.iter().filter(|&&v| v != 0.0).count();
        assert_eq!(off, 6);
        let s = assemble_semi_discrete(&b, 2.0, 0.0, &zero).unwrap();
        assert!(s.even.row(0).iter().all(|&v| v == 0.0));
        let s = assemble_semi_discrete(&b, 0.0, 1.5, &zero).unwrap();
        assert_relative_eq!(
            s.even[(0, 3)],
            -1.5 * crate::coefficients::gamma(&b, Parity::Even, 3, 0).unwrap()
        );
        assert!(assemble_semi_discrete(&b, 0.0, 0.0, &CoefficientSet::zeros(5)).is_err());
    }

    #[test]
    fn single_mode_decay() {
        let b = Basis::new(4).unwrap();
        let s = assemble_semi_discrete(&b, 0.0, 0.0, &CoefficientSet::zeros(4)).unwrap();
        let u0 = CoefficientSet::unit(4, Parity::Even, 1).unwrap();
        let dt = 1e-5;
        let traj = evolve(&s, &u0, dt, 20, 0.5).unwrap();
        let a = b.mode(Parity::Even, 1).unwrap().lambda.powi(6);
        let g = theta_factor(a, dt, 0.5);
        for w in traj.windows(2) {
            assert_relative_eq!(w[1].uc[0], g * w[0].uc[0], max_relative = 1e-14);
            assert!(w[1].uc[1..].iter().chain(&w[1].us).all(|&v| v == 0.0));
        }
    }

    #[test]
    fn stepping_arguments() {
        let b = Basis::new(2).unwrap();
        let s = assemble_semi_discrete(&b, 0.0, 0.0, &CoefficientSet::zeros(2)).unwrap();
        let u = CoefficientSet::zeros(2);
        assert!(evolve(&s, &u, 0.0, 1, 0.5).is_err());
        assert!(evolve(&s, &u, 1e-3, 1, 1.5).is_err());
        assert!(evolve(&s, &CoefficientSet::zeros(3), 1e-3, 1, 0.5).is_err());
        assert_eq!(evolve(&s, &u, 1e-3, 0, 0.5).unwrap(), vec![u]);
    }

    #[test]
    fn explicit_euler_blows_up() {
        let b = Basis::new(8).unwrap();
        let s = assemble_semi_discrete(&b, 0.0, 0.0, &CoefficientSet::zeros(8)).unwrap();
        let mut u = CoefficientSet::zeros(8);
        u.uc[7] = 1.0;
        let r = evolve(&s, &u, 1e-3, 50, 0.0);
        assert!(matches!(r, Err(Error::Instability { .. })));
    }
}
