//! The two explicit cnoidal families `φ = b0 + b2 cn²(2Kx/L, k)`, `ψ = Bφ`.
//!
//! First family (`a = c = −b`, `d = b`):
//!
//! ```text
//! B  = −ω/2 ± √(ω² + 8)/2
//! b2 = 48 b k² (Bω − 1) K² / (B² L²)
//! b0 = [−64 (Bω − 1)² b (k² − ½) K² + 2((ω² + ½)B − 3ω/2) B L²] / (2 B² L² (Bω − 1))
//! ```
//!
//! Second family (`a = c`, `b = d = 1/6 − a`, `ω = 0`, `B = ±√2`), with `a`
//! tied to the modulus so that both integration constants vanish:
//!
//! ```text
//! a  = −L² / (16 K² √(k⁴ − k² + 1))
//! b0 = −((32k² − 16) a K² + L²) / (2L²),   b2 = 24 K² a k² / L²
//! ```

use crate::elliptic::{self, jacobi, EllipticError, Modulus, PeriodicIntegrals};
use crate::numerics::{fourier_d1, NumericsError};
use crate::Real;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WaveError {
    #[error("parameter {name} = {value} outside its domain: {expected}")]
    Domain { name: &'static str, value: f64, expected: &'static str },
    #[error("residual check failed: r1 = {r1:e}, r2 = {r2:e} against scale {scale:e}")]
    Residual { r1: f64, r2: f64, scale: f64 },
    #[error("grid lengths differ: eta has {eta} samples, u has {u}")]
    LengthMismatch { eta: usize, u: usize },
    #[error(transparent)]
    Elliptic(#[from] EllipticError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Which root `B` of `B² + ωB − 2 = 0` (or which of `±√2`) is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BSign {
    Plus,
    Minus,
}

impl BSign {
    pub fn signum<T: Real>(self) -> T {
        match self {
            BSign::Plus => T::one(),
            BSign::Minus => -T::one(),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BSign::Plus => "plus",
            BSign::Minus => "minus",
        }
    }
}

impl std::str::FromStr for BSign {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plus" | "+" | "+1" | "1" => Ok(BSign::Plus),
            "minus" | "-" | "-1" => Ok(BSign::Minus),
            other => Err(format!("expected plus or minus, got {other:?}")),
        }
    }
}

impl std::fmt::Display for BSign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `(φ, φ', φ'', φ''')` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileJet<T> {
    pub phi: T,
    pub d1: T,
    pub d2: T,
    pub d3: T,
}

/// Evaluable profile `φ(x) = b0 + b2 cn²(λx, k)`, `λ = 2K(k)/L`, `ψ = Bφ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CnoidalWave<T> {
    b0: T,
    b2: T,
    k: Modulus<T>,
    period: T,
    big_b: T,
    lambda: T,
    kk: T,
}

impl<T: Real> CnoidalWave<T> {
    pub fn new(b0: T, b2: T, k: Modulus<T>, period: T, big_b: T) -> Self {
        let kk = elliptic::complete_k(k);
        Self { b0, b2, k, period, big_b, lambda: T::lit(2.0) * kk / period, kk }
    }

    pub fn b0(&self) -> T {
        self.b0
    }
    pub fn b2(&self) -> T {
        self.b2
    }
    pub fn modulus(&self) -> Modulus<T> {
        self.k
    }
    pub fn period(&self) -> T {
        self.period
    }
    pub fn big_b(&self) -> T {
        self.big_b
    }
    /// `λ = 2K(k)/L`.
    pub fn lambda(&self) -> T {
        self.lambda
    }
    pub fn complete_k(&self) -> T {
        self.kk
    }

    pub fn phi(&self, x: T) -> T {
        let cn = jacobi(self.lambda * x, self.k).cn;
        self.b0 + self.b2 * cn * cn
    }

    pub fn psi(&self, x: T) -> T {
        self.big_b * self.phi(x)
    }

    /// Analytic derivatives through the `cn²` identities
    /// `C'' = 2k'² + 4(k² − k'²)C − 6k²C²`, `C''' = (4(k² − k'²) − 12k²C) C'`.
    pub fn jet(&self, x: T) -> ProfileJet<T> {
        let t = jacobi(self.lambda * x, self.k);
        let m = self.k.m();
        let mp = T::one() - m;
        let c = t.cn * t.cn;
        let c1 = -T::lit(2.0) * t.sn * t.cn * t.dn;
        let c2 = T::lit(2.0) * mp + T::lit(4.0) * (m - mp) * c - T::lit(6.0) * m * c * c;
        let c3 = (T::lit(4.0) * (m - mp) - T::lit(12.0) * m * c) * c1;
        let l = self.lambda;
        ProfileJet {
            phi: self.b0 + self.b2 * c,
            d1: self.b2 * l * c1,
            d2: self.b2 * l * l * c2,
            d3: self.b2 * l * l * l * c3,
        }
    }

    /// `φ''(0) = −2λ² b2`.
    pub fn crest_curvature(&self) -> T {
        -T::lit(2.0) * self.lambda * self.lambda * self.b2
    }

    pub fn sample(&self, grid: &[T]) -> Vec<T> {
        grid.iter().map(|&x| self.phi(x)).collect()
    }

    pub fn sample_jets(&self, grid: &[T]) -> Vec<ProfileJet<T>> {
        grid.iter().map(|&x| self.jet(x)).collect()
    }

    pub fn periodic_integrals(&self) -> PeriodicIntegrals<T> {
        elliptic::periodic_integrals(self.k, self.period).expect("period validated at construction")
    }

    /// `∫₀ᴸ φ = L b0 + b2 J1`.
    pub fn mean_integral(&self) -> T {
        let j = self.periodic_integrals();
        self.period * self.b0 + self.b2 * j.j1
    }

    /// `‖φ‖² = L b0² + 2 b0 b2 J1 + b2² J2`.
    pub fn l2_norm_sq(&self) -> T {
        let j = self.periodic_integrals();
        self.period * self.b0 * self.b0 + T::lit(2.0) * self.b0 * self.b2 * j.j1 + self.b2 * self.b2 * j.j2
    }

    /// `‖φ'‖² = 16 b2² K² J3 / L²`.
    pub fn derivative_norm_sq(&self) -> T {
        let j = self.periodic_integrals();
        T::lit(16.0) * self.b2 * self.b2 * self.kk * self.kk * j.j3 / (self.period * self.period)
    }

    /// `max φ`: attained at the trough of `cn²` when `b2 < 0`, at the crest otherwise.
    pub fn max_value(&self) -> T {
        self.b0.max(self.b0 + self.b2)
    }
}

/// Coefficients of the system `(a, b, c, d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dispersion<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

/// Derived constants of a first-family wave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Case1Coefficients<T> {
    pub big_b: T,
    pub b0: T,
    pub b2: T,
    pub a1: T,
    pub a2: T,
}

/// First-family constants without domain checks (used by ω-differences).
pub fn case1_coefficients<T: Real>(period: T, b: T, omega: T, k: Modulus<T>, sign: BSign) -> Case1Coefficients<T> {
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let big_b = -omega * half + sign.signum::<T>() * (omega * omega + T::lit(8.0)).sqrt() * half;
    let kk = elliptic::complete_k(k);
    let k2 = kk * kk;
    let m = k.m();
    let l2 = period * period;
    let l4 = l2 * l2;
    let bw1 = big_b * omega - T::one();
    let b0 = (-T::lit(64.0) * bw1 * bw1 * b * (m - half) * k2
        + two * ((omega * omega + half) * big_b - T::lit(1.5) * omega) * big_b * l2)
        / (two * big_b * big_b * l2 * bw1);
    let b2 = T::lit(48.0) * b * m * bw1 * k2 / (big_b * big_b * l2);
    let r = m * m - m + T::one();
    let w2 = omega * omega;
    let s = w2 * w2 + w2 - T::lit(0.25);
    let bm = big_b - omega;
    let a1 = -bm * bm * (-T::lit(256.0) * b * b * r * k2 * k2 + l4) / (T::lit(4.0) * big_b * l4);
    let bw1_2 = bw1 * bw1;
    let poly = big_b * big_b * big_b * s + (-T::lit(3.0) * w2 * omega - T::lit(1.5) * omega) * big_b * big_b
        + (T::lit(2.75) * w2 + T::one()) * big_b
        - omega;
    let a2 = (T::lit(1024.0) * b * b * r * bw1_2 * bw1_2 * k2 * k2 - T::lit(4.0) * poly * big_b * l4)
        / (T::lit(8.0) * l4 * big_b * big_b * bw1_2);
    Case1Coefficients { big_b, b0, b2, a1, a2 }
}

/// Options for [`WaveCase1::build_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Case1Options {
    /// Accept `k ∈ [1/√2, 1)`, where the wave is no longer guaranteed negative.
    pub allow_large_modulus: bool,
}

/// First family, `a + b = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveCase1<T> {
    period: T,
    b: T,
    omega: T,
    k: Modulus<T>,
    sign: BSign,
    coeffs: Case1Coefficients<T>,
}

/// Tolerance of the construction-time residual check, `max(1e-9, 1e4·ε)`.
pub fn residual_tolerance<T: Real>() -> T {
    T::lit(1e-9).max(T::lit(1e4) * T::epsilon())
}

const CONSTRUCTION_GRID: usize = 128;

fn check_period<T: Real>(period: T) -> Result<(), WaveError> {
    if !(period > T::zero()) || !period.is_finite() {
        return Err(WaveError::Domain { name: "L", value: period.as_f64(), expected: "L > 0" });
    }
    Ok(())
}

impl<T: Real> WaveCase1<T> {
    pub fn build(period: T, b: T, omega: T, k: Modulus<T>, sign: BSign) -> Result<Self, WaveError> {
        Self::build_with(period, b, omega, k, sign, Case1Options::default())
    }

    pub fn build_with(
        period: T,
        b: T,
        omega: T,
        k: Modulus<T>,
        sign: BSign,
        options: Case1Options,
    ) -> Result<Self, WaveError> {
        check_period(period)?;
        if !(b > T::zero()) || !b.is_finite() {
            return Err(WaveError::Domain { name: "b", value: b.as_f64(), expected: "b > 0" });
        }
        if !(omega.abs() < T::one()) {
            return Err(WaveError::Domain { name: "omega", value: omega.as_f64(), expected: "-1 < omega < 1" });
        }
        if !options.allow_large_modulus && k.k() >= T::FRAC_1_SQRT_2() {
            return Err(WaveError::Domain {
                name: "k",
                value: k.k().as_f64(),
                expected: "0 < k < 1/sqrt(2) (override to allow larger k)",
            });
        }
        let coeffs = case1_coefficients(period, b, omega, k, sign);
        let wave = Self { period, b, omega, k, sign, coeffs };
        Wave::Case1(wave).verify(CONSTRUCTION_GRID)?;
        Ok(wave)
    }

    pub fn period(&self) -> T {
        self.period
    }
    pub fn b(&self) -> T {
        self.b
    }
    pub fn omega(&self) -> T {
        self.omega
    }
    pub fn modulus(&self) -> Modulus<T> {
        self.k
    }
    pub fn sign(&self) -> BSign {
        self.sign
    }
    pub fn coefficients(&self) -> Case1Coefficients<T> {
        self.coeffs
    }
    pub fn big_b(&self) -> T {
        self.coeffs.big_b
    }
    pub fn b0(&self) -> T {
        self.coeffs.b0
    }
    pub fn b2(&self) -> T {
        self.coeffs.b2
    }
    pub fn a1(&self) -> T {
        self.coeffs.a1
    }
    pub fn a2(&self) -> T {
        self.coeffs.a2
    }
    pub fn dispersion(&self) -> Dispersion<T> {
        Dispersion { a: -self.b, b: self.b, c: -self.b, d: self.b }
    }
    pub fn profile(&self) -> CnoidalWave<T> {
        CnoidalWave::new(self.coeffs.b0, self.coeffs.b2, self.k, self.period, self.coeffs.big_b)
    }
}

/// Second family, `a + b = 1/6`, `ω = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveCase2<T> {
    period: T,
    k: Modulus<T>,
    sign: BSign,
    a: T,
    big_b: T,
    b0: T,
    b2: T,
    a1: T,
    a2: T,
}

/// `a(k) = −L² / (16 K(k)² √(k⁴ − k² + 1))`.
pub fn case2_a<T: Real>(period: T, k: Modulus<T>) -> T {
    let kk = elliptic::complete_k(k);
    let m = k.m();
    -period * period / (T::lit(16.0) * kk * kk * (m * m - m + T::one()).sqrt())
}

/// `da/dk` from `dK/dk = (E − k'²K)/(k k'²)`: `a·(−2K'/K − r'/(2r))`.
pub fn case2_da_dk<T: Real>(period: T, k: Modulus<T>) -> T {
    let kk = elliptic::complete_k(k);
    let dk = elliptic::d_complete_k(k);
    let m = k.m();
    let r = m * m - m + T::one();
    let dr = T::lit(4.0) * m * k.k() - T::lit(2.0) * k.k();
    case2_a(period, k) * (-T::lit(2.0) * dk / kk - dr / (T::lit(2.0) * r))
}

impl<T: Real> WaveCase2<T> {
    pub fn build(period: T, k: Modulus<T>, sign: BSign) -> Result<Self, WaveError> {
        check_period(period)?;
        let wave = Self::on_curve(period, k, sign);
        Wave::Case2(wave).verify(CONSTRUCTION_GRID)?;
        Ok(wave)
    }

    /// Evaluates the printed formulas at an arbitrary `a`; off the `a(k)` curve
    /// the constants `A1`, `A2` no longer vanish and the pair is not a solution.
    pub fn with_parameter(period: T, k: Modulus<T>, sign: BSign, a: T) -> Self {
        let kk = elliptic::complete_k(k);
        let k2 = kk * kk;
        let m = k.m();
        let l2 = period * period;
        let l4 = l2 * l2;
        let r = m * m - m + T::one();
        let b0 = -T::lit(0.5) * ((T::lit(32.0) * m - T::lit(16.0)) * a * k2 + l2) / l2;
        let b2 = T::lit(24.0) * k2 * a * m / l2;
        let big_b = sign.signum::<T>() * T::SQRT_2();
        let defect = (-T::lit(256.0) * k2 * k2 * a * a * r + l4) / l4;
        Self {
            period,
            k,
            sign,
            a,
            big_b,
            b0,
            b2,
            a1: big_b / T::lit(4.0) * defect,
            a2: -defect / T::lit(4.0),
        }
    }

    fn on_curve(period: T, k: Modulus<T>, sign: BSign) -> Self {
        Self::with_parameter(period, k, sign, case2_a(period, k))
    }

    pub fn period(&self) -> T {
        self.period
    }
    pub fn modulus(&self) -> Modulus<T> {
        self.k
    }
    pub fn sign(&self) -> BSign {
        self.sign
    }
    pub fn a(&self) -> T {
        self.a
    }
    /// `b = 1/6 − a`.
    pub fn b(&self) -> T {
        T::one() / T::lit(6.0) - self.a
    }
    pub fn omega(&self) -> T {
        T::zero()
    }
    pub fn big_b(&self) -> T {
        self.big_b
    }
    pub fn b0(&self) -> T {
        self.b0
    }
    pub fn b2(&self) -> T {
        self.b2
    }
    pub fn a1(&self) -> T {
        self.a1
    }
    pub fn a2(&self) -> T {
        self.a2
    }
    /// `ν = 6a`.
    pub fn nu(&self) -> T {
        T::lit(6.0) * self.a
    }
    pub fn dispersion(&self) -> Dispersion<T> {
        let b = self.b();
        Dispersion { a: self.a, b, c: self.a, d: b }
    }
    pub fn profile(&self) -> CnoidalWave<T> {
        CnoidalWave::new(self.b0, self.b2, self.k, self.period, self.big_b)
    }
}

/// Either family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Wave<T> {
    Case1(WaveCase1<T>),
    Case2(WaveCase2<T>),
}

impl<T: Real> From<WaveCase1<T>> for Wave<T> {
    fn from(w: WaveCase1<T>) -> Self {
        Wave::Case1(w)
    }
}

impl<T: Real> From<WaveCase2<T>> for Wave<T> {
    fn from(w: WaveCase2<T>) -> Self {
        Wave::Case2(w)
    }
}

impl<T: Real> Wave<T> {
    pub fn case_number(&self) -> u8 {
        match self {
            Wave::Case1(_) => 1,
            Wave::Case2(_) => 2,
        }
    }
    pub fn period(&self) -> T {
        match self {
            Wave::Case1(w) => w.period(),
            Wave::Case2(w) => w.period(),
        }
    }
    pub fn modulus(&self) -> Modulus<T> {
        match self {
            Wave::Case1(w) => w.modulus(),
            Wave::Case2(w) => w.modulus(),
        }
    }
    pub fn sign(&self) -> BSign {
        match self {
            Wave::Case1(w) => w.sign(),
            Wave::Case2(w) => w.sign(),
        }
    }
    pub fn omega(&self) -> T {
        match self {
            Wave::Case1(w) => w.omega(),
            Wave::Case2(w) => w.omega(),
        }
    }
    pub fn big_b(&self) -> T {
        match self {
            Wave::Case1(w) => w.big_b(),
            Wave::Case2(w) => w.big_b(),
        }
    }
    pub fn b0(&self) -> T {
        match self {
            Wave::Case1(w) => w.b0(),
            Wave::Case2(w) => w.b0(),
        }
    }
    pub fn b2(&self) -> T {
        match self {
            Wave::Case1(w) => w.b2(),
            Wave::Case2(w) => w.b2(),
        }
    }
    pub fn a1(&self) -> T {
        match self {
            Wave::Case1(w) => w.a1(),
            Wave::Case2(w) => w.a1(),
        }
    }
    pub fn a2(&self) -> T {
        match self {
            Wave::Case1(w) => w.a2(),
            Wave::Case2(w) => w.a2(),
        }
    }
    pub fn dispersion(&self) -> Dispersion<T> {
        match self {
            Wave::Case1(w) => w.dispersion(),
            Wave::Case2(w) => w.dispersion(),
        }
    }
    pub fn profile(&self) -> CnoidalWave<T> {
        match self {
            Wave::Case1(w) => w.profile(),
            Wave::Case2(w) => w.profile(),
        }
    }

    fn verify(&self, n: usize) -> Result<(), WaveError> {
        let grid = crate::periodic_grid(self.period(), n);
        let r = residual_system(self, &grid);
        if r.passes(residual_tolerance()) {
            Ok(())
        } else {
            Err(WaveError::Residual { r1: r.r1_max.as_f64(), r2: r.r2_max.as_f64(), scale: r.scale.as_f64() })
        }
    }
}

/// Maximal residuals of the integrated traveling-wave system on a grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residuals<T> {
    pub r1_max: T,
    pub r2_max: T,
    /// Largest absolute value of any individual term of either equation.
    pub scale: T,
}

impl<T: Real> Residuals<T> {
    pub fn relative(&self) -> T {
        self.r1_max.max(self.r2_max) / self.scale.max(T::min_positive_value())
    }

    pub fn passes(&self, tol: T) -> bool {
        self.relative() <= tol
    }
}

/// Residuals of
///
/// ```text
/// −ωφ + ψ + φψ + aψ'' + bωφ'' − A1 = 0
/// −ωψ + φ + ψ²/2 + cφ'' + dωψ'' − A2 = 0
/// ```
///
/// with analytic `φ''`.
pub fn residual_system<T: Real>(wave: &Wave<T>, grid: &[T]) -> Residuals<T> {
    let prof = wave.profile();
    let Dispersion { a, b, c, d } = wave.dispersion();
    let w = wave.omega();
    let bb = wave.big_b();
    let (a1, a2) = (wave.a1(), wave.a2());
    let half = T::lit(0.5);
    let mut out = Residuals { r1_max: T::zero(), r2_max: T::zero(), scale: a1.abs().max(a2.abs()) };
    for &x in grid {
        let j = prof.jet(x);
        let (phi, psi, phi2, psi2) = (j.phi, bb * j.phi, j.d2, bb * j.d2);
        let t1 = [-w * phi, psi, phi * psi, a * psi2, b * w * phi2];
        let t2 = [-w * psi, phi, half * psi * psi, c * phi2, d * w * psi2];
        let r1: T = t1.iter().copied().sum::<T>() - a1;
        let r2: T = t2.iter().copied().sum::<T>() - a2;
        let big = t1.iter().chain(t2.iter()).fold(T::zero(), |m, v| m.max(v.abs()));
        out.scale = out.scale.max(big);
        out.r1_max = out.r1_max.max(r1.abs());
        out.r2_max = out.r2_max.max(r2.abs());
    }
    out
}

/// `(E, F, M1, M2)` of a pair of sampled periodic functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservedQuantities<T> {
    pub e: T,
    pub f: T,
    pub m1: T,
    pub m2: T,
}

/// Trapezoid rule on the uniform periodic grid with spectral derivatives:
///
/// ```text
/// E  = ∫ −c η_x² − a u_x² + η² + (1 + η) u²
/// F  = ∫ η u + b η_x u_x
/// M1 = ∫ η,   M2 = ∫ u
/// ```
pub fn conserved_quantities<T: Real>(
    eta: &[T],
    u: &[T],
    period: T,
    dispersion: Dispersion<T>,
) -> Result<ConservedQuantities<T>, WaveError> {
    if eta.len() != u.len() {
        return Err(WaveError::LengthMismatch { eta: eta.len(), u: u.len() });
    }
    check_period(period)?;
    let n = eta.len();
    let d1 = fourier_d1(n, period)?;
    let eta_x = d1.mul_vec(eta);
    let u_x = d1.mul_vec(u);
    let dx = period / T::from_count(n);
    let Dispersion { a, b, c, .. } = dispersion;
    let mut q = ConservedQuantities { e: T::zero(), f: T::zero(), m1: T::zero(), m2: T::zero() };
    for i in 0..n {
        q.e = q.e - c * eta_x[i] * eta_x[i] - a * u_x[i] * u_x[i] + eta[i] * eta[i] + (T::one() + eta[i]) * u[i] * u[i];
        q.f = q.f + eta[i] * u[i] + b * eta_x[i] * u_x[i];
        q.m1 = q.m1 + eta[i];
        q.m2 = q.m2 + u[i];
    }
    q.e = q.e * dx;
    q.f = q.f * dx;
    q.m1 = q.m1 * dx;
    q.m2 = q.m2 * dx;
    Ok(q)
}
