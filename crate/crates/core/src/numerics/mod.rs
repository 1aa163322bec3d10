//! Numerical kernels: Dormand–Prince integration, Gauss–Kronrod quadrature,
//! cyclic Jacobi eigensolver, dense LU, bisection, Richardson differences and
//! Fourier collocation matrices.

mod calculus;
mod linalg;
mod ode;
mod quadrature;
mod spectral;

pub use calculus::{bisect, richardson_diff, richardson_diff_vec};
pub use linalg::{eig_symmetric, lu_solve, DenseMatrix, LuDecomposition, SymmetricEigen, SymmetricMatrix};
pub use ode::{integrate_ivp, IvpSolution, IvpStats};
pub use quadrature::{adaptive_quadrature, QuadratureTolerance};
pub use spectral::{fourier_d1, fourier_d2};

use crate::Real;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(&'static str),
    #[error("step budget of {max_steps} exhausted at t = {t}")]
    MaxStepsExceeded { max_steps: usize, t: f64 },
    #[error("step size underflow (h = {h:e}) at t = {t}")]
    StepUnderflow { t: f64, h: f64 },
    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),
    #[error("Jacobi eigensolver did not converge in {sweeps} sweeps (off-diagonal norm {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },
    #[error("quadrature did not reach tolerance after {intervals} subintervals (error estimate {estimate:e})")]
    QuadratureNotConverged { intervals: usize, estimate: f64 },
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    #[error("matrix is singular to working precision (pivot {0})")]
    Singular(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("collocation needs an even number of points >= 2, got {0}")]
    OddGrid(usize),
}

/// Error control for [`integrate_ivp`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceSpec<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    pub max_steps: usize,
}

impl<T: Real> ToleranceSpec<T> {
    pub fn new(abs_tol: T, rel_tol: T, max_steps: usize) -> Result<Self, NumericsError> {
        if !(abs_tol > T::zero()) || !abs_tol.is_finite() {
            return Err(NumericsError::InvalidTolerance("abs_tol must be positive"));
        }
        if !(rel_tol > T::zero()) || !rel_tol.is_finite() {
            return Err(NumericsError::InvalidTolerance("rel_tol must be positive"));
        }
        if max_steps == 0 {
            return Err(NumericsError::InvalidTolerance("max_steps must be at least 1"));
        }
        Ok(Self { abs_tol, rel_tol, max_steps })
    }
}

impl<T: Real> Default for ToleranceSpec<T> {
    fn default() -> Self {
        Self {
            abs_tol: T::lit(1e-12),
            rel_tol: T::lit(1e-12),
            max_steps: 2_000_000,
        }
    }
}
