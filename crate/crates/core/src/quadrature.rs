//! Composite Gauss–Legendre quadrature on `[-1, 1]`.
//!
//! Panels are uniform; the panel count starts from the oscillation hint
//! (four panels per wavelength `2π/k`) and doubles until two successive
//! estimates agree.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Points per panel.
pub const PANEL_POINTS: usize = 16;

/// Panels per wavelength of the fastest oscillation.
pub const PANELS_PER_WAVELENGTH: f64 = 4.0;

const MAX_PANELS: usize = 1 << 16;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// `n`-point rule by Newton iteration on `P_n`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            // Tricomi initial guess
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    /// Shared 16-point rule.
    pub fn panel_rule() -> &'static GaussLegendre {
        static RULE: OnceLock<GaussLegendre> = OnceLock::new();
        RULE.get_or_init(|| GaussLegendre::new(PANEL_POINTS))
    }

    /// Integral over `[a, b]` with a single application of the rule.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| w * f(mid + half * t))
            .sum::<f64>()
            * half
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Adaptive composite quadrature settings.
#[derive(Clone, Copy, Debug)]
pub struct QuadOptions {
    /// Refinement stops once successive estimates differ by less than
    /// `tol · max(1, ∫|f|)`.
    pub tol: f64,
    /// Largest oscillation wavenumber of the integrand (0 for smooth).
    pub wavenumber: f64,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            wavenumber: 0.0,
        }
    }
}

impl QuadOptions {
    pub fn with_wavenumber(mut self, k: f64) -> Self {
        self.wavenumber = k;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    fn initial_panels(&self) -> usize {
        // the interval holds k/π wavelengths
        let by_wave = (PANELS_PER_WAVELENGTH * self.wavenumber / PI).ceil() as usize;
        by_wave.max(4)
    }
}

/// `(∫f, ∫|f|)` on uniform panels.
fn composite<F: Fn(f64) -> f64>(f: &F, panels: usize) -> (f64, f64) {
    let rule = GaussLegendre::panel_rule();
    let half = 1.0 / panels as f64;
    let mut sum = 0.0;
    let mut abs = 0.0;
    for i in 0..panels {
        let mid = -1.0 + half * (2 * i + 1) as f64;
        for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
            let v = w * f(mid + half * t);
            sum += v;
            abs += v.abs();
        }
    }
    (sum * half, abs * half)
}

/// `∫₋₁¹ f dx` to the requested tolerance.
pub fn integrate<F: Fn(f64) -> f64>(f: F, opts: &QuadOptions) -> Result<f64> {
    let mut panels = opts.initial_panels();
    let (mut prev, _) = composite(&f, panels);
    loop {
        panels *= 2;
        if panels > MAX_PANELS {
            return Err(Error::Quadrature {
                panels: panels / 2,
                delta: f64::NAN,
            });
        }
        let (next, mass) = composite(&f, panels);
        let delta = (next - prev).abs();
        if !next.is_finite() {
            return Err(Error::NonFinite("quadrature"));
        }
        // cancellation limits the attainable accuracy to rounding of ∫|f|
        if delta < opts.tol * mass.max(1.0) {
            return Ok(next);
        }
        if panels * 2 > MAX_PANELS {
            return Err(Error::Quadrature { panels, delta });
        }
        prev = next;
    }
}

/// L² inner product `⟨f, g⟩ = ∫₋₁¹ f g dx`.
pub fn inner_product<F, G>(f: F, g: G, opts: &QuadOptions) -> Result<f64>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    integrate(|x| f(x) * g(x), opts)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn weights_sum_to_interval_length() {
        for n in [1, 2, 5, 16, 31] {
            let r = GaussLegendre::new(n);
            assert!((r.weights.iter().sum::<f64>() - 2.0).abs() < 1e-14, "n = {n}");
        }
    }

    #[test]
    fn exact_for_polynomials_up_to_rule_order() {
        let r = GaussLegendre::panel_rule();
        // 16 points integrate degree 31 exactly
        for k in 0..=15 {
            let p = 2 * k;
            let got = r.integrate(&|x: f64| x.powi(p), -1.0, 1.0);
            let want = 2.0 / (p as f64 + 1.0);
            assert_relative_eq!(got, want, max_relative = 1e-14);
            let odd = r.integrate(&|x: f64| x.powi(p + 1), -1.0, 1.0);
            assert!(odd.abs() < 1e-15);
        }
    }

    #[test]
    fn oscillatory_integrand() {
        let k = 250.0;
        let got = integrate(|x| (k * x).cos(), &QuadOptions::default().with_wavenumber(k)).unwrap();
        assert!((got - 2.0 * k.sin() / k).abs() < 1e-13);
    }

    #[test]
    fn inner_product_of_monomials() {
        let v = inner_product(|x| x, |x| x, &QuadOptions::default()).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn refinement_cap() {
        let opts = QuadOptions { tol: 1e-14, wavenumber: 0.0 };
        let e = integrate(|x: f64| x.abs().sqrt().recip().min(1e300), &opts);
        assert!(e.is_err());
    }
}
