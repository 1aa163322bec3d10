use super::{HillError, HillOperator};
use crate::numerics::{integrate_ivp, IvpStats, ToleranceSpec};
use crate::waves::CnoidalWave;
use crate::Real;

/// Output of [`theta_constant`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaReport<T> {
    pub theta: T,
    pub phi2_at_0: T,
    /// `(y(L), y'(L))`.
    pub y_end: (T, T),
    pub stats: IvpStats,
    pub tolerance: ToleranceSpec<T>,
}

const ANNIHILATION_TOL: f64 = 1e-8;
const CHECK_GRID: usize = 64;

/// Floquet constant `Θ = y'(L) / φ''(0)` where `y` solves
/// `−p y'' + q y = 0`, `y(0) = −1/φ''(0)`, `y'(0) = 0`.
///
/// `op` must annihilate `φ'` (the second solution `φ'/φ''(0)` is then the odd
/// partner of `y`); `Θ ≠ 0` iff the zero eigenvalue of `op` is simple and
/// `Θ < 0` places it second in the periodic spectrum.
pub fn theta_constant<T: Real>(op: &HillOperator<T>, wave: &CnoidalWave<T>) -> Result<ThetaReport<T>, HillError> {
    let tol = ToleranceSpec::new(T::lit(1e-12), T::lit(1e-12), 5_000_000)?;
    theta_constant_with(op, wave, tol, T::one())
}

/// [`theta_constant`] with explicit tolerances and a positive rescaling of the
/// initial datum (`y(0) = −scale/φ''(0)`); the sign of `Θ` does not depend on
/// `scale`.
pub fn theta_constant_with<T: Real>(
    op: &HillOperator<T>,
    wave: &CnoidalWave<T>,
    tol: ToleranceSpec<T>,
    scale: T,
) -> Result<ThetaReport<T>, HillError> {
    let check = T::lit(ANNIHILATION_TOL).max(T::lit(1e6) * T::epsilon());
    let (residual, term_scale) = op.kernel_residual(wave, CHECK_GRID);
    if residual > check * term_scale {
        return Err(HillError::NotAnnihilating { residual: residual.as_f64(), scale: term_scale.as_f64() });
    }
    let phi2 = wave.crest_curvature();
    let p = op.p();
    let sol = integrate_ivp(
        |x: T, y: &[T], dy: &mut [T]| {
            dy[0] = y[1];
            dy[1] = op.potential(x) * y[0] / p;
        },
        &[-scale / phi2, T::zero()],
        (T::zero(), wave.period()),
        tol,
    )?;
    Ok(ThetaReport {
        theta: sol.y[1] / phi2,
        phi2_at_0: phi2,
        y_end: (sol.y[0], sol.y[1]),
        stats: sol.stats,
        tolerance: tol,
    })
}
