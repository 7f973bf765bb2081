//! Orthonormal eigenfunctions of the sixth-order beam problem
//!
//! ```text
//!     -ψ⁽⁶⁾ = λ⁶ψ   on [-1, 1],   ψ' = ψ'' = ψ⁽⁵⁾ = 0 at x = ±1
//! ```
//!
//! and a Galerkin spectral solver built on them. The even (`c`) and odd
//! (`s`) eigenfunctions play the role of cosines and sines; together with the
//! constant mode they form a complete orthonormal set, so any function that
//! satisfies the boundary conditions above expands with rapidly decaying
//! coefficients.
//!
//! ```
//! use sixbeam::{Basis, galerkin};
//!
//! let basis = Basis::new(40).unwrap();
//! let sol = galerkin::solve_model_i(&basis).unwrap();
//! let u0 = sol.synthesize(&basis, 0.0).unwrap();
//! assert!((u0 - 1.0).abs() < 1e-8);
//! ```
//!
//! Every hyperbolic factor `cosh(√3λ)`, `cosh(2√3λ)` is carried with its
//! dominant exponential factored out (see [`hyperbolic`]), so bases with
//! hundreds of modes stay finite in double precision.
#![allow(clippy::needless_range_loop)]
#![allow(clippy::too_many_arguments)]

pub mod coefficients;
pub mod eigenbasis;
mod error;
pub mod fit;
pub mod galerkin;
pub mod hyperbolic;
pub mod linalg;
pub mod oracle;
pub mod quadrature;
pub mod roots;

pub use coefficients::{CoefficientSet, OperatorKind, OperatorMatrix};
pub use eigenbasis::{Basis, Eigenvalue, Mode, Parity};
pub use error::{Error, Result};
pub use galerkin::{BvpSpec, SemiDiscreteSystem, SteadySolution};

