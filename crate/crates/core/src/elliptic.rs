//! Jacobi elliptic functions and complete elliptic integrals.
//!
//! Everything is driven by the arithmetic-geometric mean
//!
//! ```text
//! a₀ = 1, b₀ = k', c₀ = k
//! aₙ = (aₙ₋₁ + bₙ₋₁)/2,  bₙ = √(aₙ₋₁ bₙ₋₁),  cₙ = (aₙ₋₁ − bₙ₋₁)/2
//! ```
//!
//! which gives `K = π / (2 a_N)`, `E = K (1 − Σ 2ⁿ⁻¹ cₙ²)` and, through the
//! descending Landen recursion on the amplitude, `sn`, `cn`, `dn`.
//!
//! The periodic integrals `J1, J2, J3` over one period `L` of
//! `cn²(2K x / L)` are evaluated in closed form for `k ≥ 1/2` and by their
//! power series in `m = k²` below that, where the closed forms lose digits
//! to the `1/k⁴` cancellation.

use crate::Real;
use thiserror::Error;

/// Distance from 0 and 1 inside which a modulus is rejected.
pub const MODULUS_GUARD: f64 = 1e-12;

const MAX_AGM_STEPS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EllipticError {
    #[error("modulus k = {0} outside the open interval (0, 1) (guard {MODULUS_GUARD:e})")]
    ModulusOutOfRange(f64),
    #[error("period L = {0} must be positive and finite")]
    InvalidPeriod(f64),
}

/// Elliptic modulus `k`, strictly inside `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Modulus<T>(T);

impl<T: Real> Modulus<T> {
    pub fn new(k: T) -> Result<Self, EllipticError> {
        let guard = T::lit(MODULUS_GUARD);
        if !k.is_finite() || k <= guard || k >= T::one() - guard {
            return Err(EllipticError::ModulusOutOfRange(k.as_f64()));
        }
        Ok(Self(k))
    }

    #[inline]
    pub fn k(self) -> T {
        self.0
    }

    /// Parameter `m = k²`.
    #[inline]
    pub fn m(self) -> T {
        self.0 * self.0
    }

    /// Complementary modulus `k' = √(1 − k²)`.
    #[inline]
    pub fn complementary(self) -> T {
        ((T::one() - self.0) * (T::one() + self.0)).sqrt()
    }
}

/// Values `(sn, cn, dn)` at a common argument and modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticTriple<T> {
    pub sn: T,
    pub cn: T,
    pub dn: T,
}

/// The AGM ladder started from `(1, k', k)`.
struct Agm<T> {
    a: Vec<T>,
    c: Vec<T>,
}

fn agm<T: Real>(k: Modulus<T>) -> Agm<T> {
    let mut a = vec![T::one()];
    let mut c = vec![k.k()];
    let mut b = k.complementary();
    let half = T::lit(0.5);
    for _ in 0..MAX_AGM_STEPS {
        let an = *a.last().unwrap();
        if c.last().unwrap().abs() <= T::epsilon() * an {
            break;
        }
        let next = (an + b) * half;
        c.push((an - b) * half);
        b = (an * b).sqrt();
        a.push(next);
    }
    Agm { a, c }
}

/// Complete elliptic integral of the first kind `K(k)`.
pub fn complete_k<T: Real>(k: Modulus<T>) -> T {
    let ladder = agm(k);
    T::FRAC_PI_2() / *ladder.a.last().unwrap()
}

/// Complete elliptic integral of the second kind `E(k)`.
pub fn complete_e<T: Real>(k: Modulus<T>) -> T {
    complete_ke(k).1
}

/// `(K(k), E(k))` from a single AGM ladder.
pub fn complete_ke<T: Real>(k: Modulus<T>) -> (T, T) {
    let ladder = agm(k);
    let kk = T::FRAC_PI_2() / *ladder.a.last().unwrap();
    let mut weight = T::lit(0.5);
    let mut sum = T::zero();
    for &cn in &ladder.c {
        sum = sum + weight * cn * cn;
        weight = weight + weight;
    }
    (kk, kk * (T::one() - sum))
}

/// `dK/dk = (E − k'² K) / (k k'²)`.
pub fn d_complete_k<T: Real>(k: Modulus<T>) -> T {
    let (kk, ee) = complete_ke(k);
    let kp2 = T::one() - k.m();
    (ee - kp2 * kk) / (k.k() * kp2)
}

/// Jacobi elliptic functions `sn(u, k)`, `cn(u, k)`, `dn(u, k)`.
pub fn jacobi<T: Real>(u: T, k: Modulus<T>) -> EllipticTriple<T> {
    let ladder = agm(k);
    let n = ladder.a.len() - 1;
    let two = T::lit(2.0);
    let mut phi = two.powi(n as i32) * ladder.a[n] * u;
    for j in (1..=n).rev() {
        let s = (ladder.c[j] / ladder.a[j] * phi.sin()).max(-T::one()).min(T::one());
        phi = (phi + s.asin()) / two;
    }
    let (sn, cn) = phi.sin_cos();
    // Factored form stays accurate near u = K with k close to 1, where the
    // Landen quotient cos φ₀ / cos(φ₁ − φ₀) degenerates to 0/0.
    let ks = k.k() * sn;
    let dn = ((T::one() - ks) * (T::one() + ks)).sqrt();
    EllipticTriple { sn, cn, dn }
}

/// `J1 = ∫₀ᴸ cn²`, `J2 = ∫₀ᴸ cn⁴`, `J3 = ∫₀ᴸ sn² cn² dn²`, all at argument
/// `2K(k) x / L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodicIntegrals<T> {
    pub j1: T,
    pub j2: T,
    pub j3: T,
}

/// Series threshold on `k` for the periodic integrals.
const SERIES_BELOW: f64 = 0.5;

pub fn periodic_integrals<T: Real>(
    k: Modulus<T>,
    period: T,
) -> Result<PeriodicIntegrals<T>, EllipticError> {
    if !(period > T::zero()) || !period.is_finite() {
        return Err(EllipticError::InvalidPeriod(period.as_f64()));
    }
    let (kk, ee) = complete_ke(k);
    let m = k.m();
    let scale = period / kk;
    let (q1, q2, q3) = if k.k() < T::lit(SERIES_BELOW) {
        quarter_period_series(m)
    } else {
        let kp2 = T::one() - m;
        let m2 = m * m;
        let r = m2 - m + T::one();
        let q1 = (ee - kp2 * kk) / m;
        let q2 = ((T::lit(2.0) - T::lit(3.0) * m) * kp2 * kk
            + T::lit(2.0) * (T::lit(2.0) * m - T::one()) * ee)
            / (T::lit(3.0) * m2);
        let q3 = (T::lit(2.0) * r * ee - (T::lit(2.0) - m) * kp2 * kk) / (T::lit(15.0) * m2);
        (q1, q2, q3)
    };
    Ok(PeriodicIntegrals {
        j1: scale * q1,
        j2: scale * q2,
        j3: scale * q3,
    })
}

/// `∫₀ᴷ cn²`, `∫₀ᴷ cn⁴`, `∫₀ᴷ sn²cn²dn²` from the Maclaurin series of `K` and
/// `E` in `m`, with the vanishing leading coefficients removed exactly.
fn quarter_period_series<T: Real>(m: T) -> (T, T, T) {
    // a_j: coefficients of (2/π)K, e_j: coefficients of (2/π)E.
    let mut a = vec![T::one()];
    let mut e = vec![T::one()];
    let (mut s1, mut s2, mut s3) = (T::zero(), T::zero(), T::zero());
    let mut mpow = T::one();
    for j in 1..200usize {
        let jj = T::from_count(j);
        let ratio = (T::lit(2.0) * jj - T::one()) / (T::lit(2.0) * jj);
        let aj = a[j - 1] * ratio * ratio;
        a.push(aj);
        e.push(-aj / (T::lit(2.0) * jj - T::one()));

        // E − k'²K: coefficient of m^j is a_{j-1}/(2j).
        let t1 = a[j - 1] / (T::lit(2.0) * jj) * mpow;
        s1 = s1 + t1;
        let mut t2 = T::zero();
        let mut t3 = T::zero();
        if j >= 2 {
            let c2 = T::lit(2.0) * a[j] - T::lit(5.0) * a[j - 1] + T::lit(3.0) * a[j - 2]
                + T::lit(4.0) * e[j - 1]
                - T::lit(2.0) * e[j];
            let c3 = T::lit(2.0) * (e[j] - e[j - 1] + e[j - 2]) - T::lit(2.0) * a[j]
                + T::lit(3.0) * a[j - 1]
                - a[j - 2];
            let mp = mpow / m;
            t2 = c2 * mp;
            t3 = c3 * mp;
            s2 = s2 + t2;
            s3 = s3 + t3;
        }
        mpow = mpow * m;
        if j > 3 && t1.abs() <= T::epsilon() * s1.abs() && t2.abs() <= T::epsilon() * s2.abs()
            && t3.abs() <= T::epsilon() * s3.abs()
        {
            break;
        }
    }
    let h = T::FRAC_PI_2();
    (h * s1, h * s2 / T::lit(3.0), h * s3 / T::lit(15.0))
}
