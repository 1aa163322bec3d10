use super::{check_grid, HillError, HillOperator};
use crate::numerics::{eig_symmetric, SymmetricEigen};
use crate::{periodic_grid, Real};

/// Lowest periodic eigenvalues of a Hill operator with inertia counts.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport<T> {
    /// Lowest `m` eigenvalues, ascending.
    pub eigenvalues: Vec<T>,
    /// `#{λ < −tol_zero}` over the whole discrete spectrum.
    pub n_count: usize,
    /// `#{|λ| ≤ tol_zero}`.
    pub z_count: usize,
    /// `|⟨v, φ'⟩| / (‖v‖ ‖φ'‖)` for the eigenvector `v` closest to zero.
    pub zero_mode_alignment: T,
    pub tol_zero: T,
    /// Discretization error estimate on the reported eigenvalues.
    pub error_estimate: T,
    pub grid: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumOptions {
    /// Number of reported eigenvalues.
    pub m: usize,
    /// Compare against the `N/2` grid to size the zero tolerance.
    pub estimate_error: bool,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        Self { m: 8, estimate_error: true }
    }
}

const TOL_ZERO_FLOOR: f64 = 1e-6;

pub fn spectrum<T: Real>(op: &HillOperator<T>, n: usize) -> Result<SpectrumReport<T>, HillError> {
    spectrum_with(op, n, SpectrumOptions::default())
}

pub fn spectrum_with<T: Real>(
    op: &HillOperator<T>,
    n: usize,
    options: SpectrumOptions,
) -> Result<SpectrumReport<T>, HillError> {
    check_grid(n)?;
    let eig = eig_symmetric(&op.matrix(n)?)?;
    let m = options.m.min(n);
    let error_estimate = if options.estimate_error {
        let coarse = eig_symmetric(&op.matrix(n / 2)?)?;
        eig.values
            .iter()
            .zip(&coarse.values)
            .take(m.min(n / 2))
            .fold(T::zero(), |acc, (a, b)| acc.max((*a - *b).abs()))
    } else {
        T::zero()
    };
    let tol_zero = T::lit(TOL_ZERO_FLOOR).max(T::lit(10.0) * error_estimate);
    let grid = periodic_grid(op.period(), n);
    let dphi: Vec<T> = grid.iter().map(|&x| op.profile().jet(x).d1).collect();
    Ok(summarize(&eig, &dphi, tol_zero, m, error_estimate, n))
}

pub(crate) fn summarize<T: Real>(
    eig: &SymmetricEigen<T>,
    mode: &[T],
    tol_zero: T,
    m: usize,
    error_estimate: T,
    grid: usize,
) -> SpectrumReport<T> {
    let n_count = eig.values.iter().filter(|&&l| l < -tol_zero).count();
    let z_count = eig.values.iter().filter(|&&l| l.abs() <= tol_zero).count();
    let nearest = eig
        .values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap())
        .map(|(i, _)| i)
        .unwrap_or(0);
    let zero_mode_alignment = alignment(&eig.vector(nearest), mode);
    SpectrumReport {
        eigenvalues: eig.values.iter().take(m).copied().collect(),
        n_count,
        z_count,
        zero_mode_alignment,
        tol_zero,
        error_estimate,
        grid,
    }
}

pub(crate) fn alignment<T: Real>(v: &[T], w: &[T]) -> T {
    let dot: T = v.iter().zip(w).map(|(&a, &b)| a * b).sum();
    let nv: T = v.iter().map(|&a| a * a).sum::<T>().sqrt();
    let nw: T = w.iter().map(|&a| a * a).sum::<T>().sqrt();
    if nv == T::zero() || nw == T::zero() {
        return T::zero();
    }
    (dot / (nv * nw)).abs()
}
