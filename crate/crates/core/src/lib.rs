//! Explicit cnoidal traveling waves of the "abcd" Boussinesq system
//!
//! ```text
//! η_t + u_x + (ηu)_x + a u_xxx − b η_xxt = 0
//! u_t + η_x + u u_x + c η_xxx − d u_xxt = 0
//! ```
//!
//! with `a = c < 0`, `b = d > 0`, together with the spectral and stability
//! machinery built on top of them:
//!
//! * [`elliptic`]: Jacobi elliptic functions, complete integrals `K`, `E` and
//!   the periodic integrals `J1`, `J2`, `J3` of powers of `cn`.
//! * [`waves`]: the `a + b = 0` and `a + b = 1/6` families `φ = b0 + b2 cn²`,
//!   `ψ = Bφ`, residual checks and conserved quantities.
//! * [`hill`]: the scalar Hill operators `L1..L4`, the Floquet constant `Θ`,
//!   Fourier-collocation spectra and the 2×2 linearized operator.
//! * [`stability`]: the index `I` (first family), the upper bound on `I`
//!   (second family), the `b*` threshold and the (H2) verdict.
//! * [`numerics`]: the dependency-free kernels underneath (Dormand–Prince,
//!   cyclic Jacobi, Gauss–Kronrod, bisection, Richardson, collocation).
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the `*64` aliases
//! below fix the scalar to `f64`, which is what the tolerances are tuned for.

pub mod elliptic;
pub mod hill;
pub mod numerics;
mod real;
pub mod stability;
pub mod waves;

pub use real::{periodic_grid, Real};

pub type Modulus64 = elliptic::Modulus<f64>;
pub type EllipticTriple64 = elliptic::EllipticTriple<f64>;
pub type PeriodicIntegrals64 = elliptic::PeriodicIntegrals<f64>;
pub type CnoidalWave64 = waves::CnoidalWave<f64>;
pub type WaveCase1F64 = waves::WaveCase1<f64>;
pub type WaveCase2F64 = waves::WaveCase2<f64>;
pub type Wave64 = waves::Wave<f64>;
pub type HillOperator64 = hill::HillOperator<f64>;
pub type LinearizedOperator64 = hill::LinearizedOperator<f64>;
pub type ThetaReport64 = hill::ThetaReport<f64>;
pub type SpectrumReport64 = hill::SpectrumReport<f64>;
pub type StabilityReportCase1F64 = stability::StabilityReportCase1<f64>;
pub type StabilityReportCase2F64 = stability::StabilityReportCase2<f64>;
pub type ToleranceSpec64 = numerics::ToleranceSpec<f64>;
pub type SymmetricMatrix64 = numerics::SymmetricMatrix<f64>;
