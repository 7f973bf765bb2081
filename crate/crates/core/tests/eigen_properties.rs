use std::sync::OnceLock;

use proptest::prelude::*;
use sixbeam::eigenbasis::{relative_residual, solve_eigenvalue};
use sixbeam::{Basis, Parity};

fn basis() -> &'static Basis {
    static B: OnceLock<Basis> = OnceLock::new();
    B.get_or_init(|| Basis::new(60).unwrap())
}

fn parity() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Even), Just(Parity::Odd)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reflection_symmetry(p in parity(), m in 1usize..=60, x in -1.0f64..=1.0, k in 0usize..=6) {
        let b = basis();
        let a = b.eval_psi(p, m, x, k).unwrap();
        let r = b.eval_psi(p, m, -x, k).unwrap();
        // d^k of an even function has parity (-1)^k
        let odd_total = (p == Parity::Odd) ^ (k % 2 == 1);
        let sign = if odd_total { -1.0 } else { 1.0 };
        let scale = b.mode(p, m).unwrap().lambda.powi(k as i32);
        prop_assert!((a - sign * r).abs() <= 1e-13 * scale, "{} vs {}", a, r);
    }

    #[test]
    fn sixth_derivative_is_eigenrelation(p in parity(), m in 1usize..=30, x in -1.0f64..=1.0) {
        let b = basis();
        let l6 = b.mode(p, m).unwrap().lambda.powi(6);
        let d6 = b.eval_psi(p, m, x, 6).unwrap();
        let d0 = b.eval_psi(p, m, x, 0).unwrap();
        prop_assert!((d6 + l6 * d0).abs() / l6 < 1e-9);
    }

    #[test]
    fn eigenvalue_residual_and_ordering(p in parity(), m in 1usize..=1300) {
        let a = solve_eigenvalue(p, m).unwrap();
        let b = solve_eigenvalue(p, m + 1).unwrap();
        prop_assert!(relative_residual(p, a.lambda) < 1e-12);
        prop_assert!(b.lambda > a.lambda);
    }

    #[test]
    fn eigenvalue_residual_within_one_ulp(p in parity(), m in 1usize..=10_000) {
        let l = solve_eigenvalue(p, m).unwrap().lambda;
        let ulp = f64::from_bits(l.to_bits() + 1) - l;
        prop_assert!(relative_residual(p, l) <= 1.5 * ulp);
    }
}

#[test]
#[ignore = "past m ≈ 1300 one ulp of λ already moves the relation by more than 1e-12"]
fn eigenvalue_residual_bound_for_every_index() {
    for p in [Parity::Even, Parity::Odd] {
        for m in 1..=10_000 {
            let l = solve_eigenvalue(p, m).unwrap().lambda;
            assert!(relative_residual(p, l) < 1e-12, "{p} {m}");
        }
    }
}

#[test]
fn uniform_grid_eigenrelation_up_to_thirty() {
    let b = basis();
    for p in [Parity::Even, Parity::Odd] {
        for m in 1..=30 {
            let l6 = b.mode(p, m).unwrap().lambda.powi(6);
            let worst = (0..=100)
                .map(|i| -1.0 + 0.02 * i as f64)
                .map(|x| (b.eval_psi(p, m, x, 6).unwrap() + l6 * b.eval_psi(p, m, x, 0).unwrap()).abs() / l6)
                .fold(0.0, f64::max);
            assert!(worst < 1e-9, "{p} {m}: {worst:e}");
        }
    }
}

#[test]
fn boundary_conditions_scaled() {
    let b = basis();
    for p in [Parity::Even, Parity::Odd] {
        for md in b.modes(p) {
            for x in [-1.0, 1.0] {
                for k in [1, 2, 5] {
                    let v = md.eval(x, k).abs();
                    assert!(v <= 1e-8 * md.lambda.powi(k as i32), "{p} {} x={x} k={k}: {v:e}", md.index);
                }
            }
        }
    }
}

#[test]
fn odd_modes_vanish_at_origin() {
    let b = basis();
    for m in 1..=60 {
        assert_eq!(b.eval_psi(Parity::Odd, m, 0.0, 0).unwrap(), 0.0);
    }
}

#[test]
fn truncation_contents() {
    let b = Basis::new(1).unwrap();
    assert_eq!(b.modes(Parity::Even).len(), 1);
    assert_eq!(b.modes(Parity::Odd).len(), 1);
    assert_eq!(b.eigenvalues(Parity::Even), vec![0.0, b.mode(Parity::Even, 1).unwrap().lambda]);
    assert!(b.eval_psi(Parity::Even, 2, 0.0, 0).is_err());
    assert!(Basis::new(0).is_err());
    assert!(Basis::new(10_001).is_err());
}

#[test]
fn large_basis_is_finite() {
    let b = Basis::new(200).unwrap();
    b.audit().unwrap();
    for p in [Parity::Even, Parity::Odd] {
        for md in b.modes(p) {
            assert!(md.norm.is_finite() && md.norm != 0.0);
            for k in 0..=6 {
                assert!(md.eval(1.0, k).is_finite() && md.eval(-0.999, k).is_finite());
            }
        }
    }
}
