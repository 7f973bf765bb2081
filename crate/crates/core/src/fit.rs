//! Power-law fits `|y| ≈ C·x^p` by least squares in log-log space.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerLaw {
    pub coefficient: f64,
    pub exponent: f64,
    /// Number of points that entered the fit.
    pub points: usize,
}

impl PowerLaw {
    pub fn eval(&self, x: f64) -> f64 {
        self.coefficient * x.powf(self.exponent)
    }
}

/// Ordinary least squares on `(ln x, ln |y|)`; zero and non-finite `y` are
/// skipped.
pub fn power_law<I>(samples: I) -> Result<PowerLaw>
where
    I: IntoIterator<Item = (f64, f64)>,
{
    let pts: Vec<(f64, f64)> = samples
        .into_iter()
        .filter(|&(x, y)| x > 0.0 && y != 0.0 && y.is_finite())
        .map(|(x, y)| (x.ln(), y.abs().ln()))
        .collect();
    if pts.len() < 2 {
        return Err(Error::Fit(pts.len()));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::Fit(1));
    }
    let exponent = sxy / sxx;
    Ok(PowerLaw {
        coefficient: (my - exponent * mx).exp(),
        exponent,
        points: pts.len(),
    })
}

/// Fit of `values[i]` against index `i + 1` restricted to `lo ..= hi`.
pub fn decay(values: &[f64], lo: usize, hi: usize) -> Result<PowerLaw> {
    power_law(
        values
            .iter()
            .enumerate()
            .map(|(i, &v)| (i + 1, v))
            .filter(|&(n, _)| n >= lo && n <= hi)
            .map(|(n, v)| (n as f64, v)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_power_law() {
        let f = power_law((1..50).map(|n| (n as f64, -259.0 * (n as f64).powf(-7.94)))).unwrap();
        assert!((f.exponent + 7.94).abs() < 1e-12);
        assert!((f.coefficient - 259.0).abs() < 1e-9);
        assert_eq!(f.points, 49);
    }

    #[test]
    fn skips_zeros_and_windows() {
        let mut v: Vec<f64> = (1..=100).map(|n| (n as f64).powi(-3)).collect();
        v[59] = 0.0;
        let f = decay(&v, 50, 100).unwrap();
        assert_eq!(f.points, 50);
        assert!((f.exponent + 3.0).abs() < 1e-12);
    }

    #[test]
    fn too_few_points() {
        assert!(power_law([(1.0, 2.0)]).is_err());
        assert!(power_law([(2.0, 1.0), (2.0, 3.0)]).is_err());
    }
}
