use super::{DenseMatrix, NumericsError};
use crate::Real;

fn check_grid(n: usize) -> Result<(), NumericsError> {
    if n < 2 || n % 2 != 0 {
        return Err(NumericsError::OddGrid(n));
    }
    Ok(())
}

/// First-derivative Fourier collocation matrix on `n` equispaced points of a
/// period-`period` grid (`x_j = j·period/n`).
pub fn fourier_d1<T: Real>(n: usize, period: T) -> Result<DenseMatrix<T>, NumericsError> {
    check_grid(n)?;
    let h = T::TAU() / T::from_count(n);
    let scale = T::TAU() / period;
    let half = T::lit(0.5);
    Ok(DenseMatrix::from_fn(n, n, |i, j| {
        if i == j {
            return T::zero();
        }
        let d = i as isize - j as isize;
        let sign = if d.rem_euclid(2) == 0 { T::one() } else { -T::one() };
        let arg = T::from_f64(d as f64).unwrap() * h * half;
        scale * half * sign / arg.tan()
    }))
}

/// Second-derivative Fourier collocation matrix (symmetric) on the same grid.
pub fn fourier_d2<T: Real>(n: usize, period: T) -> Result<DenseMatrix<T>, NumericsError> {
    check_grid(n)?;
    let h = T::TAU() / T::from_count(n);
    let scale = (T::TAU() / period).powi(2);
    let half = T::lit(0.5);
    let diag = -T::PI() * T::PI() / (T::lit(3.0) * h * h) - T::one() / T::lit(6.0);
    Ok(DenseMatrix::from_fn(n, n, |i, j| {
        if i == j {
            return scale * diag;
        }
        let d = i as isize - j as isize;
        let sign = if d.rem_euclid(2) == 0 { T::one() } else { -T::one() };
        let s = (T::from_f64(d as f64).unwrap() * h * half).sin();
        -scale * sign * half / (s * s)
    }))
}
