//! Exponent-scaled hyperbolic arithmetic.
//!
//! Every closed form in this crate involves `cosh(a)`, `sinh(a)` or
//! `cosh(2a)` with `a = √3λ`. For `λ ≳ 205` the last of these no longer fits
//! in an `f64`, and well before that the products lose all precision. The
//! dominant growth is therefore factored out exactly:
//!
//! ```text
//!     cosh(a) = eᵃ · (1 + e⁻²ᵃ)/2,    sinh(a) = eᵃ · (1 - e⁻²ᵃ)/2
//! ```
//!
//! and every formula is rewritten in terms of the bounded mantissas and the
//! small number `e⁻ᵃ`, which may underflow harmlessly to zero.

use num_complex::Complex64;

/// Hyperbolic functions of a fixed non-negative argument `a`, stored as
/// mantissas relative to `eᵃ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledHyperbolic {
    /// The argument `a`; also the natural-log exponent of the scale factor.
    pub exponent: f64,
    /// `e⁻ᵃ`.
    pub decay: f64,
    /// `cosh(a)·e⁻ᵃ`.
    pub cosh: f64,
    /// `sinh(a)·e⁻ᵃ`.
    pub sinh: f64,
}

impl ScaledHyperbolic {
    pub fn new(a: f64) -> Self {
        debug_assert!(a >= 0.0);
        let decay = (-a).exp();
        let d2 = decay * decay;
        Self {
            exponent: a,
            decay,
            cosh: 0.5 * (1.0 + d2),
            sinh: 0.5 * (1.0 - d2),
        }
    }

    /// `cosh(2a)·e⁻²ᵃ`.
    pub fn cosh_double(&self) -> f64 {
        let d2 = self.decay * self.decay;
        0.5 * (1.0 + d2 * d2)
    }

    /// `sech(a)`.
    pub fn sech(&self) -> f64 {
        self.decay / self.cosh
    }

    /// `tanh(a)`.
    pub fn tanh(&self) -> f64 {
        self.sinh / self.cosh
    }
}

/// `cosh(u)·e⁻ˢ`, valid without overflow whenever `|Re u| ≤ s`.
#[inline]
pub fn cosh_scaled(u: Complex64, shift: f64) -> Complex64 {
    0.5 * ((u - shift).exp() + (-u - shift).exp())
}

/// `sinh(u)·e⁻ˢ`, valid without overflow whenever `|Re u| ≤ s`.
#[inline]
pub fn sinh_scaled(u: Complex64, shift: f64) -> Complex64 {
    0.5 * ((u - shift).exp() - (-u - shift).exp())
}
