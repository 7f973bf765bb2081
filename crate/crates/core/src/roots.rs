//! Bracketed root finding.

use crate::error::{Error, Result};

/// Newton's method safeguarded by bisection.
///
/// `f` returns the value and the derivative. The bracket `[lo, hi]` must
/// contain a sign change; it is shrunk on every evaluation and a Newton step
/// that leaves it (or fails to halve the residual) is replaced by bisection.
/// Converges when the step falls below `rel_tol·|x|`.
pub fn safeguarded_newton<F>(
    f: F,
    lo: f64,
    hi: f64,
    start: f64,
    rel_tol: f64,
    max_iter: usize,
) -> Result<f64>
where
    F: Fn(f64) -> (f64, f64),
{
    let (mut lo, mut hi) = (lo.min(hi), lo.max(hi));
    let (flo, _) = f(lo);
    let (fhi, _) = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::Convergence {
            iterations: 0,
            last: start,
        });
    }
    let lo_sign = flo.signum();

    let mut x = if start > lo && start < hi {
        start
    } else {
        0.5 * (lo + hi)
    };
    let mut prev_step = hi - lo;
    for _ in 0..max_iter {
        let (fx, dfx) = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == lo_sign {
            lo = x;
        } else {
            hi = x;
        }

        let newton = x - fx / dfx;
        if dfx != 0.0 && (newton - x).abs() <= rel_tol * x.abs() {
            return Ok(newton);
        }
        let use_newton = dfx != 0.0
            && newton.is_finite()
            && newton > lo
            && newton < hi
            && (newton - x).abs() < 0.5 * prev_step.abs().max(f64::MIN_POSITIVE);
        let next = if use_newton { newton } else { 0.5 * (lo + hi) };
        let step = next - x;
        prev_step = if use_newton { step } else { hi - lo };
        x = next;
        if step.abs() <= rel_tol * x.abs() || hi - lo <= rel_tol * x.abs() {
            return Ok(x);
        }
    }
    Err(Error::Convergence {
        iterations: max_iter,
        last: x,
    })
}
