use super::NumericsError;
use crate::Real;

/// Root of `f` on `[lo, hi]` by bisection; `f(lo)` and `f(hi)` must differ in
/// sign (or one of them vanish). Stops when the bracket is narrower than `tol`
/// and returns its midpoint.
pub fn bisect<T: Real, F: FnMut(T) -> T>(mut f: F, lo: T, hi: T, tol: T) -> Result<T, NumericsError> {
    let (mut lo, mut hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if !f_lo.is_finite() || !f_hi.is_finite() {
        return Err(NumericsError::NonFinite("bisect"));
    }
    if f_lo == T::zero() {
        return Ok(lo);
    }
    if f_hi == T::zero() {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(NumericsError::NoSignChange {
            lo: lo.as_f64(),
            hi: hi.as_f64(),
            f_lo: f_lo.as_f64(),
            f_hi: f_hi.as_f64(),
        });
    }
    let half = T::lit(0.5);
    for _ in 0..400 {
        if hi - lo <= tol {
            break;
        }
        let mid = lo + (hi - lo) * half;
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == T::zero() {
            return Ok(mid);
        }
        if fm.signum() == f_lo.signum() {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(lo + (hi - lo) * half)
}

/// Central difference at steps `h` and `h/2` combined by one Richardson step:
/// `(4 D(h/2) − D(h)) / 3`, error `O(h⁴)`.
pub fn richardson_diff<T: Real, F: FnMut(T) -> T>(mut f: F, x: T, h: T) -> T {
    let two = T::lit(2.0);
    let mut central = |s: T| (f(x + s) - f(x - s)) / (two * s);
    let coarse = central(h);
    let fine = central(h / two);
    (T::lit(4.0) * fine - coarse) / T::lit(3.0)
}

/// [`richardson_diff`] applied componentwise to a vector-valued function.
pub fn richardson_diff_vec<T: Real, F: FnMut(T) -> Vec<T>>(mut f: F, x: T, h: T) -> Vec<T> {
    let two = T::lit(2.0);
    let mut central = |s: T| {
        let p = f(x + s);
        let m = f(x - s);
        p.into_iter().zip(m).map(|(a, b)| (a - b) / (two * s)).collect::<Vec<T>>()
    };
    let coarse = central(h);
    let fine = central(h / two);
    fine.into_iter()
        .zip(coarse)
        .map(|(f2, f1)| (T::lit(4.0) * f2 - f1) / T::lit(3.0))
        .collect()
}
