use super::{inner, StabilityError};
use crate::elliptic::{periodic_integrals, Modulus};
use crate::hill::LinearizedOperator;
use crate::numerics::{bisect, richardson_diff, richardson_diff_vec};
use crate::waves::{case1_coefficients, BSign, Case1Coefficients, CnoidalWave, Wave, WaveCase1};
use crate::{periodic_grid, Real};

/// Default step of the ω-differences.
pub const OMEGA_STEP: f64 = 1e-4;
const SENTINEL_TOL: f64 = 1e-8;
const OMEGA_GUARD: f64 = 0.99;
const K_GUARD: (f64, f64) = (0.005, 0.705);
const DIRECT_GRID: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmegaParameter {
    B,
    B0,
    B2,
    A1,
    A2,
}

impl OmegaParameter {
    fn pick<T: Copy>(self, c: &Case1Coefficients<T>) -> T {
        match self {
            OmegaParameter::B => c.big_b,
            OmegaParameter::B0 => c.b0,
            OmegaParameter::B2 => c.b2,
            OmegaParameter::A1 => c.a1,
            OmegaParameter::A2 => c.a2,
        }
    }
}

/// An ω-derivative; for `B` the analytic value is attached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DOmega<T> {
    pub value: T,
    pub analytic: Option<T>,
}

/// `∂ω` of one wave constant at fixed `(L, b, k, sign)`, by Richardson-extrapolated
/// central differences with step `h`. For `B` the result is checked against
/// `∂ωB = −1/2 ± ω / (2√(ω² + 8))`.
pub fn d_omega<T: Real>(param: OmegaParameter, wave: &WaveCase1<T>, h: T) -> Result<DOmega<T>, StabilityError> {
    let w = wave.omega();
    if w.abs() + T::lit(2.0) * h >= T::one() {
        return Err(StabilityError::OmegaMargin { omega: w.as_f64(), margin: (T::lit(2.0) * h).as_f64() });
    }
    let (l, b, k, s) = (wave.period(), wave.b(), wave.modulus(), wave.sign());
    let value = richardson_diff(|om| param.pick(&case1_coefficients(l, b, om, k, s)), w, h);
    let analytic = if param == OmegaParameter::B {
        let exact = -T::lit(0.5) + s.signum::<T>() * w / (T::lit(2.0) * (w * w + T::lit(8.0)).sqrt());
        let tol = T::lit(SENTINEL_TOL).max(T::lit(1e4) * T::epsilon().sqrt());
        if (value - exact).abs() > tol * exact.abs().max(T::one()) {
            return Err(StabilityError::DerivativeSentinel { numeric: value.as_f64(), analytic: exact.as_f64() });
        }
        Some(exact)
    } else {
        None
    };
    Ok(DOmega { value, analytic })
}

/// `Q = F + c_M1 M1 + c_M2 M2`, so that `𝓛Φ = Q'(Ψ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QFunctional<T> {
    pub c_f: T,
    pub c_m1: T,
    pub c_m2: T,
}

impl<T: Real> QFunctional<T> {
    /// `c_M1 = ∂ωA2`, `c_M2 = ∂ωA1` for the first family.
    pub fn case1(wave: &WaveCase1<T>, h: T) -> Result<Self, StabilityError> {
        Ok(Self {
            c_f: T::one(),
            c_m1: d_omega(OmegaParameter::A2, wave, h)?.value,
            c_m2: d_omega(OmegaParameter::A1, wave, h)?.value,
        })
    }

    /// `Q = F` for the second family.
    pub fn case2() -> Self {
        Self { c_f: T::one(), c_m1: T::zero(), c_m2: T::zero() }
    }

    /// `Q'(Ψ) = (ψ − bψ'' + c_M1, φ − bφ'' + c_M2)` sampled on `grid`.
    pub fn gradient(&self, wave: &Wave<T>, grid: &[T]) -> (Vec<T>, Vec<T>) {
        let prof = wave.profile();
        let b = wave.dispersion().b;
        let bb = wave.big_b();
        grid.iter()
            .map(|&x| {
                let j = prof.jet(x);
                (
                    self.c_f * bb * (j.phi - b * j.d2) + self.c_m1,
                    self.c_f * (j.phi - b * j.d2) + self.c_m2,
                )
            })
            .unzip()
    }
}

/// Index report for the first family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityReportCase1<T> {
    /// `I = I0 + I1 + I2`.
    pub i: T,
    /// `∂ω[B‖φ‖² + bB‖φ'‖²]`.
    pub i0: T,
    /// `∂ωA2 (L ∂ωb0 + J1 ∂ωb2)`.
    pub i1: T,
    /// `∂ωA1 (LB ∂ωb0 + BJ1 ∂ωb2 + Lb0 ∂ωB + b2J1 ∂ωB)`.
    pub i2: T,
    /// `I2` with `Lb ∂ωb0` in place of `LB ∂ωb0` in its first term.
    pub i2_lowercase_b: T,
    /// `(𝓛Φ, Φ)` with `Φ = ∂ω(φ, ψ)` on a grid.
    pub i_direct: Option<T>,
    /// `|(𝓛Φ, Ψ')| / (‖𝓛Φ‖ ‖Ψ'‖)`.
    pub orthogonality: Option<T>,
    pub d_omega_step: T,
    pub grid: usize,
}

impl<T: Real> StabilityReportCase1<T> {
    pub fn i_lowercase_b(&self) -> T {
        self.i0 + self.i1 + self.i2_lowercase_b
    }

    pub fn route_agreement(&self) -> Option<T> {
        self.i_direct.map(|d| ((self.i - d) / d.abs().max(self.i.abs()).max(T::min_positive_value())).abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexOptions<T> {
    pub step: T,
    /// Grid for the `(𝓛Φ, Φ)` cross-check; `None` skips it.
    pub direct_grid: Option<usize>,
}

impl<T: Real> Default for IndexOptions<T> {
    fn default() -> Self {
        Self { step: T::lit(OMEGA_STEP), direct_grid: Some(DIRECT_GRID) }
    }
}

fn guard<T: Real>(omega: T, k: Modulus<T>) -> Result<(), StabilityError> {
    if omega.abs() > T::lit(OMEGA_GUARD) {
        return Err(StabilityError::Guard { name: "omega", value: omega.as_f64(), lo: -OMEGA_GUARD, hi: OMEGA_GUARD });
    }
    let kv = k.k();
    if kv < T::lit(K_GUARD.0) || kv > T::lit(K_GUARD.1) {
        return Err(StabilityError::Guard { name: "k", value: kv.as_f64(), lo: K_GUARD.0, hi: K_GUARD.1 });
    }
    Ok(())
}

struct ClosedForm<T> {
    i0: T,
    i1: T,
    i2: T,
    i2_lower: T,
}

fn closed_form<T: Real>(period: T, b: T, omega: T, k: Modulus<T>, sign: BSign, h: T) -> ClosedForm<T> {
    let j = periodic_integrals(k, period).expect("period checked by caller");
    let kk = crate::elliptic::complete_k(k);
    let coeff = |om: T| case1_coefficients(period, b, om, k, sign);
    let two = T::lit(2.0);
    let dj3 = T::lit(16.0) * kk * kk * j.j3 / (period * period);
    let i0 = richardson_diff(
        |om| {
            let c = coeff(om);
            c.big_b * (period * c.b0 * c.b0 + two * c.b0 * c.b2 * j.j1 + c.b2 * c.b2 * j.j2)
                + b * c.big_b * c.b2 * c.b2 * dj3
        },
        omega,
        h,
    );
    let d = |p: OmegaParameter| richardson_diff(|om| p.pick(&coeff(om)), omega, h);
    let (db, db0, db2, da1, da2) = (
        d(OmegaParameter::B),
        d(OmegaParameter::B0),
        d(OmegaParameter::B2),
        d(OmegaParameter::A1),
        d(OmegaParameter::A2),
    );
    let c = coeff(omega);
    let tail = c.big_b * j.j1 * db2 + period * c.b0 * db + c.b2 * j.j1 * db;
    ClosedForm {
        i0,
        i1: da2 * (period * db0 + j.j1 * db2),
        i2: da1 * (period * c.big_b * db0 + tail),
        i2_lower: da1 * (period * b * db0 + tail),
    }
}

/// `I` from the closed-form expansion only, without building a wave.
pub fn index_case1_closed_form<T: Real>(period: T, b: T, omega: T, k: Modulus<T>, sign: BSign) -> T {
    let c = closed_form(period, b, omega, k, sign, T::lit(OMEGA_STEP));
    c.i0 + c.i1 + c.i2
}

pub fn index_case1<T: Real>(wave: &WaveCase1<T>) -> Result<StabilityReportCase1<T>, StabilityError> {
    index_case1_with(wave, IndexOptions::default())
}

pub fn index_case1_with<T: Real>(
    wave: &WaveCase1<T>,
    options: IndexOptions<T>,
) -> Result<StabilityReportCase1<T>, StabilityError> {
    guard(wave.omega(), wave.modulus())?;
    let h = options.step;
    // Runs the margin check and the ∂ωB sentinel.
    d_omega(OmegaParameter::B, wave, h)?;
    let (l, b, w, k, s) = (wave.period(), wave.b(), wave.omega(), wave.modulus(), wave.sign());
    let cf = closed_form(l, b, w, k, s, h);
    let mut report = StabilityReportCase1 {
        i: cf.i0 + cf.i1 + cf.i2,
        i0: cf.i0,
        i1: cf.i1,
        i2: cf.i2,
        i2_lowercase_b: cf.i2_lower,
        i_direct: None,
        orthogonality: None,
        d_omega_step: h,
        grid: 0,
    };
    if let Some(n) = options.direct_grid {
        let d = direct_route(wave, n, h)?;
        report.i_direct = Some(d.0);
        report.orthogonality = Some(d.1);
        report.grid = n;
    }
    Ok(report)
}

/// `((𝓛Φ, Φ), |(𝓛Φ, Ψ')| / (‖𝓛Φ‖‖Ψ'‖))` with `Φ = ∂ω(φ, Bφ)` sampled on `n` points.
fn direct_route<T: Real>(wave: &WaveCase1<T>, n: usize, h: T) -> Result<(T, T), StabilityError> {
    let (l, b, k, s) = (wave.period(), wave.b(), wave.modulus(), wave.sign());
    let grid = periodic_grid(l, n);
    let stacked = |om: T| {
        let c = case1_coefficients(l, b, om, k, s);
        let prof = CnoidalWave::new(c.b0, c.b2, k, l, c.big_b);
        let mut v = prof.sample(&grid);
        let tail: Vec<T> = v.iter().map(|&p| c.big_b * p).collect();
        v.extend(tail);
        v
    };
    let phi_w = richardson_diff_vec(stacked, wave.omega(), h);
    let (f, g) = phi_w.split_at(n);
    let op = LinearizedOperator::new(&Wave::Case1(*wave), n)?;
    let (lf, lg) = op.apply(f, g)?;
    let dx = l / T::from_count(n);
    let value = inner(&lf, f, dx) + inner(&lg, g, dx);
    let prof = wave.profile();
    let dphi: Vec<T> = grid.iter().map(|&x| prof.jet(x).d1).collect();
    let dpsi: Vec<T> = dphi.iter().map(|&v| wave.big_b() * v).collect();
    let orth = inner(&lf, &dphi, dx) + inner(&lg, &dpsi, dx);
    let norm_l = (inner(&lf, &lf, dx) + inner(&lg, &lg, dx)).sqrt();
    let norm_k = (inner(&dphi, &dphi, dx) + inner(&dpsi, &dpsi, dx)).sqrt();
    Ok((value, (orth / (norm_l * norm_k).max(T::min_positive_value())).abs()))
}

/// One `(ω, k)` node of a threshold search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdPoint<T> {
    pub omega: T,
    pub k: T,
    pub threshold: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BStarReport<T> {
    pub period: T,
    pub bstar: T,
    pub per_point: Vec<ThresholdPoint<T>>,
}

/// Relative bracket for the threshold search: `b ∈ [1e-6, 100]·L²`.
pub const BSTAR_BRACKET: (f64, f64) = (1e-6, 100.0);
const BSTAR_RTOL: f64 = 1e-6;

/// The `b` at which `I(b)` changes sign for fixed `(L, ω, k, sign)`, by
/// bisection in `ln b` to relative width `1e-6`.
pub fn threshold_at<T: Real>(period: T, omega: T, k: Modulus<T>, sign: BSign) -> Result<T, StabilityError> {
    guard(omega, k)?;
    let l2 = period * period;
    let lo = T::lit(BSTAR_BRACKET.0) * l2;
    let hi = T::lit(BSTAR_BRACKET.1) * l2;
    let f = |lnb: T| index_case1_closed_form(period, lnb.exp(), omega, k, sign);
    let tol = T::lit(BSTAR_RTOL).max(T::lit(16.0) * T::epsilon());
    match bisect(f, lo.ln(), hi.ln(), tol) {
        Ok(lnb) => Ok(lnb.exp()),
        Err(crate::numerics::NumericsError::NoSignChange { f_lo, f_hi, .. }) => Err(StabilityError::NoSignChange {
            omega: omega.as_f64(),
            k: k.k().as_f64(),
            lo: lo.as_f64(),
            hi: hi.as_f64(),
            i_lo: f_lo,
            i_hi: f_hi,
        }),
        Err(e) => Err(e.into()),
    }
}

/// Supremum over the `(ω, k)` grid of the per-point thresholds.
pub fn find_bstar<T: Real>(
    period: T,
    omega_grid: &[T],
    k_grid: &[Modulus<T>],
    sign: BSign,
) -> Result<BStarReport<T>, StabilityError> {
    if omega_grid.is_empty() || k_grid.is_empty() {
        return Err(StabilityError::EmptyGrid);
    }
    let mut per_point = Vec::with_capacity(omega_grid.len() * k_grid.len());
    for &omega in omega_grid {
        for &k in k_grid {
            per_point.push(ThresholdPoint { omega, k: k.k(), threshold: threshold_at(period, omega, k, sign)? });
        }
    }
    let bstar = per_point.iter().fold(T::zero(), |m, p| m.max(p.threshold));
    Ok(BStarReport { period, bstar, per_point })
}
