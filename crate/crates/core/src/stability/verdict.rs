use super::{bound_case2, index_case1_with, inner, IndexOptions, QFunctional, StabilityError};
use crate::hill::LinearizedOperator;
use crate::waves::Wave;
use crate::{periodic_grid, Real};

const VERDICT_GRID: usize = 256;
const RESIDUAL_TOL: f64 = 1e-8;

/// Outcome of the (H2) check for one wave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct H2Verdict<T> {
    /// `I` for the first family, its upper bound for the second.
    pub value: T,
    pub negative: bool,
    /// `|(Q'(Ψ), Ψ')| / (‖Q'(Ψ)‖ ‖Ψ'‖)`.
    pub orthogonality_residual: T,
    /// `‖𝓛Ψ'‖∞` relative to its largest term.
    pub kernel_residual: T,
    /// `2F(Ψ) + c_M1 M1 + c_M2 M2`; must not vanish.
    pub h4_value: T,
    pub pass: bool,
}

pub fn check_h2<T: Real>(wave: &Wave<T>) -> Result<H2Verdict<T>, StabilityError> {
    let (value, q) = match wave {
        Wave::Case1(w) => {
            let opts = IndexOptions { direct_grid: None, ..IndexOptions::default() };
            let r = index_case1_with(w, opts)?;
            (r.i, QFunctional::case1(w, opts.step)?)
        }
        Wave::Case2(w) => (bound_case2(w)?.bound, QFunctional::case2()),
    };
    let op = LinearizedOperator::new(wave, VERDICT_GRID)?;
    let (res, scale) = op.kernel_residual();
    let kernel_residual = res / scale.max(T::min_positive_value());

    let l = wave.period();
    let grid = periodic_grid(l, VERDICT_GRID);
    let dx = l / T::from_count(VERDICT_GRID);
    let (g1, g2) = q.gradient(wave, &grid);
    let prof = wave.profile();
    let bb = wave.big_b();
    let dphi: Vec<T> = grid.iter().map(|&x| prof.jet(x).d1).collect();
    let dpsi: Vec<T> = dphi.iter().map(|&v| bb * v).collect();
    let dot = inner(&g1, &dphi, dx) + inner(&g2, &dpsi, dx);
    let ng = (inner(&g1, &g1, dx) + inner(&g2, &g2, dx)).sqrt();
    let nk = (inner(&dphi, &dphi, dx) + inner(&dpsi, &dpsi, dx)).sqrt();
    let orthogonality_residual = (dot / (ng * nk).max(T::min_positive_value())).abs();

    let b = wave.dispersion().b;
    let f = bb * prof.l2_norm_sq() + b * bb * prof.derivative_norm_sq();
    let m1 = prof.mean_integral();
    let h4_value = T::lit(2.0) * q.c_f * f + q.c_m1 * m1 + q.c_m2 * bb * m1;

    let negative = value < T::zero();
    let tol = T::lit(RESIDUAL_TOL);
    let pass = negative && orthogonality_residual <= tol && kernel_residual <= tol && h4_value != T::zero();
    Ok(H2Verdict { value, negative, orthogonality_residual, kernel_residual, h4_value, pass })
}
