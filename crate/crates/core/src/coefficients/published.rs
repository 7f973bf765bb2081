//! Closed forms exactly as they are usually quoted, including their
//! misprints. Only used to document discrepancies against quadrature; the
//! solver never calls these.

use crate::eigenbasis::{Basis, Parity, SQRT_3};
use crate::error::{Error, Result};

use super::{beta_modes, chi_mode};

/// Even diagonal `β_nn` with prefactor `1/8` instead of `1/2`.
pub fn beta_even_diagonal(basis: &Basis, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroIndex(0));
    }
    let md = basis.mode(Parity::Even, n)?;
    Ok(beta_modes(md, md) / 4.0)
}

/// Odd off-diagonal `β_nm` with the second term taken from the even family
/// (`cos λ_n cosh` in the numerator, `cos λ_n - cosh` in the denominator).
pub fn beta_odd(basis: &Basis, n: usize, m: usize) -> Result<f64> {
    if n == 0 || m == 0 {
        return Err(Error::ZeroIndex(0));
    }
    if n == m {
        return beta_odd_diagonal(basis, n);
    }
    let mn = basis.mode(Parity::Odd, n)?;
    let mm = basis.mode(Parity::Odd, m)?;
    let (ln, lm) = (mn.lambda, mm.lambda);
    let g = |md: &crate::eigenbasis::Mode, mixed: bool| {
        let e = md.hyp.decay;
        let (sh, ch) = (md.hyp.sinh, md.hyp.cosh);
        let s2 = (2.0 * md.lambda).sin();
        if mixed {
            (s2 * e - SQRT_3 * md.cos * sh + md.cos * ch) / (md.cos * e - ch)
        } else {
            (s2 * e - SQRT_3 * md.cos * sh + md.sin * ch) / md.denom
        }
    };
    let r = (lm / ln).powi(3);
    let pre = 6.0 * mn.norm * mm.norm / (r - 1.0 / r);
    Ok(pre * (-lm * mn.cos * g(mm, false) + ln * mm.cos * g(mn, true)))
}

/// Odd diagonal `β_nn` as printed.
pub fn beta_odd_diagonal(basis: &Basis, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroIndex(0));
    }
    let md = basis.mode(Parity::Odd, n)?;
    let l = md.lambda;
    let e = md.hyp.decay;
    let (sh, ch) = (md.hyp.sinh, md.hyp.cosh);
    let (s, c) = (md.sin, md.cos);
    let (s2, c2) = (2.0 * l).sin_cos();
    let d = md.denom;
    let inner = l
        * (-c2 * e * e + sh * sh + ch * ch - 4.0 * SQRT_3 * c * c * s * sh * e
            + 4.0 * s * s * c * ch * e)
        + 2.0 * c * d * (SQRT_3 * c * sh - s * ch - s2 * e);
    Ok(l * md.norm * md.norm / (2.0 * d * d) * inner)
}

/// `χ^{12}_m` with `λ^{10}` in the prefactor instead of `λ^{12}`.
pub fn chi12(basis: &Basis, m: usize) -> Result<f64> {
    if m == 0 {
        return Err(Error::ZeroIndex(0));
    }
    let md = basis.mode(Parity::Even, m)?;
    Ok(chi_mode(md, 12) * md.lambda * md.lambda)
}
