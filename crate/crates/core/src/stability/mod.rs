//! Hypothesis (H2) for both families: the index `I = (𝓛Φ, Φ)` of the first
//! family with its `b*` threshold, and the upper bound `(8/3)𝒥1 + (1/3)𝒥3`
//! on `I` for the second.

mod bound;
mod index;
mod verdict;

pub use bound::{bound_case2, bound_case2_crosscheck, BoundCrossCheck, StabilityReportCase2};
pub use index::{
    d_omega, find_bstar, index_case1, index_case1_closed_form, index_case1_with, threshold_at, BStarReport,
    DOmega, IndexOptions, OmegaParameter, QFunctional, StabilityReportCase1, ThresholdPoint,
};
pub use verdict::{check_h2, H2Verdict};

use crate::hill::HillError;
use crate::numerics::NumericsError;
use crate::waves::WaveError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StabilityError {
    #[error("omega = {omega} leaves no margin of {margin} inside (-1, 1)")]
    OmegaMargin { omega: f64, margin: f64 },
    #[error("{name} = {value} outside the index guard [{lo}, {hi}]")]
    Guard { name: &'static str, value: f64, lo: f64, hi: f64 },
    #[error("finite-difference dB/domega = {numeric} disagrees with analytic {analytic}")]
    DerivativeSentinel { numeric: f64, analytic: f64 },
    #[error(
        "no sign change of I in b on [{lo:e}, {hi:e}] at omega = {omega}, k = {k}: I(lo) = {i_lo:e}, I(hi) = {i_hi:e}"
    )]
    NoSignChange { omega: f64, k: f64, lo: f64, hi: f64, i_lo: f64, i_hi: f64 },
    #[error("1 - b0 = {0} is not positive; the alpha0 lower bound fails")]
    AlphaBound(f64),
    #[error("omega and k grids must be non-empty")]
    EmptyGrid,
    #[error(transparent)]
    Wave(#[from] WaveError),
    #[error(transparent)]
    Hill(#[from] HillError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Trapezoid `L²` inner product on a uniform periodic grid.
pub(crate) fn inner<T: crate::Real>(u: &[T], v: &[T], dx: T) -> T {
    u.iter().zip(v).map(|(&a, &b)| a * b).sum::<T>() * dx
}
