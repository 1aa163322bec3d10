//! Scalar Hill operators `−p ∂² + q0 + q1 φ`, the Floquet constant `Θ`,
//! collocation spectra and the 2×2 linearized operator
//!
//! ```text
//! 𝓛 = ⎡ 1 + c∂²          bω∂² + ψ − ω ⎤
//!     ⎣ bω∂² + ψ − ω     1 + a∂² + φ  ⎦
//! ```

mod linearized;
mod operator;
mod spectrum;
mod theta;

pub use linearized::{
    assemble_l, inertia_of_l, similarity_check, Congruence, InertiaReport, LinearizedOperator, SimilarityReport,
};
pub use operator::{HillKind, HillOperator};
pub use spectrum::{spectrum, spectrum_with, SpectrumOptions, SpectrumReport};
pub use theta::{theta_constant, theta_constant_with, ThetaReport};

use crate::numerics::NumericsError;
use crate::waves::WaveError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HillError {
    #[error("operator does not annihilate phi': residual {residual:e} against scale {scale:e}")]
    NotAnnihilating { residual: f64, scale: f64 },
    #[error("{kind} is not defined for the case-{case} family")]
    WrongFamily { kind: &'static str, case: u8 },
    #[error("grid size {0} must be even and at least 64")]
    GridSize(usize),
    #[error("transform is singular (determinant {0:e})")]
    SingularTransform(f64),
    #[error("inertia mismatch: Sylvester route gives (n, z) = {sylvester:?}, direct 2N route gives {direct:?}")]
    InertiaMismatch { sylvester: (usize, usize), direct: (usize, usize) },
    #[error("input has {got} samples, operator grid has {expected}")]
    GridMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Wave(#[from] WaveError),
}

pub(crate) const MIN_GRID: usize = 64;

pub(crate) fn check_grid(n: usize) -> Result<(), HillError> {
    if n < MIN_GRID || n % 2 != 0 {
        return Err(HillError::GridSize(n));
    }
    Ok(())
}
