//! Dense solvers for the Galerkin systems.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative pivot floor: `|d_k| < PIVOT_FLOOR · ‖A‖_max` counts as singular.
pub const PIVOT_FLOOR: f64 = 1e-12;

/// `A = L D Lᵀ` of a symmetric matrix, computed without pivoting.
///
/// Only the lower triangle of the input is read.
#[derive(Clone, Debug)]
pub struct Ldlt {
    /// Unit lower-triangular factor; the diagonal holds `D`.
    packed: DMatrix<f64>,
}

impl Ldlt {
    pub fn new(a: &DMatrix<f64>) -> Result<Self> {
        let n = a.nrows();
        if a.ncols() != n {
            return Err(Error::Dimension {
                expected: n,
                got: a.ncols(),
            });
        }
        let mut f = a.clone();
        let mut work = vec![0.0; n];
        for j in 0..n {
            // work[k] = L_jk d_k
            for k in 0..j {
                work[k] = f[(j, k)] * f[(k, k)];
            }
            let d = f[(j, j)] - (0..j).map(|k| f[(j, k)] * work[k]).sum::<f64>();
            if d == 0.0 || !d.is_finite() {
                return Err(Error::Singular);
            }
            f[(j, j)] = d;
            for i in j + 1..n {
                let s = f[(i, j)] - (0..j).map(|k| f[(i, k)] * work[k]).sum::<f64>();
                f[(i, j)] = s / d;
            }
        }
        Ok(Self { packed: f })
    }

    pub fn pivots(&self) -> Vec<f64> {
        self.packed.diagonal().iter().copied().collect()
    }

    /// `Some(sign)` when every pivot has the same sign.
    pub fn definiteness(&self) -> Option<f64> {
        let d = self.packed.diagonal();
        if d.iter().all(|&v| v > 0.0) {
            Some(1.0)
        } else if d.iter().all(|&v| v < 0.0) {
            Some(-1.0)
        } else {
            None
        }
    }

    pub fn solve(&self, b: &DVector<f64>) -> DVector<f64> {
        let n = self.packed.nrows();
        let mut x = b.clone();
        for i in 0..n {
            let s: f64 = (0..i).map(|k| self.packed[(i, k)] * x[k]).sum();
            x[i] -= s;
        }
        for i in 0..n {
            x[i] /= self.packed[(i, i)];
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|k| self.packed[(k, i)] * x[k]).sum();
            x[i] -= s;
        }
        x
    }
}

/// Which path [`solve_symmetric`] took.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolvePath {
    Ldlt,
    PivotedLu,
}

#[derive(Clone, Debug)]
pub struct SymmetricSolve {
    pub x: DVector<f64>,
    pub path: SolvePath,
    /// LDLᵀ pivots when the factorization completed.
    pub pivots: Vec<f64>,
}

/// Solves `A x = b` for symmetric definite `A` by LDLᵀ. Falls back to
/// partially pivoted LU (with a warning) when the pivots change sign or
/// one is below `PIVOT_FLOOR · ‖A‖_max`.
pub fn solve_symmetric(a: &DMatrix<f64>, b: &DVector<f64>) -> Result<SymmetricSolve> {
    if b.len() != a.nrows() {
        return Err(Error::Dimension {
            expected: a.nrows(),
            got: b.len(),
        });
    }
    if a.is_empty() {
        return Ok(SymmetricSolve {
            x: DVector::zeros(0),
            path: SolvePath::Ldlt,
            pivots: Vec::new(),
        });
    }
    let scale = a.amax();
    let factor = Ldlt::new(a);
    let pivots = factor.as_ref().map(|f| f.pivots()).unwrap_or_default();
    if let Ok(f) = &factor {
        let small = pivots.iter().any(|d| d.abs() < PIVOT_FLOOR * scale);
        if f.definiteness().is_some() && !small {
            return Ok(SymmetricSolve {
                x: f.solve(b),
                path: SolvePath::Ldlt,
                pivots,
            });
        }
    }
    log::warn!("matrix is not definite; falling back to pivoted LU");
    let x = solve_general(a, b)?;
    Ok(SymmetricSolve {
        x,
        path: SolvePath::PivotedLu,
        pivots,
    })
}

pub fn solve_general(a: &DMatrix<f64>, b: &DVector<f64>) -> Result<DVector<f64>> {
    a.clone().lu().solve(b).ok_or(Error::Singular)
}
