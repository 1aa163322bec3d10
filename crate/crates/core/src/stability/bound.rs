use super::{inner, StabilityError};
use crate::elliptic::Modulus;
use crate::hill::{check_grid, HillKind, HillOperator};
use crate::numerics::{lu_solve, richardson_diff, DenseMatrix};
use crate::waves::{case2_a, case2_da_dk, CnoidalWave, Wave, WaveCase2};
use crate::real::max_abs;
use crate::{periodic_grid, Real};
use std::collections::BTreeMap;

/// Step in `k` for the derivatives along the `a(k)` curve.
pub const K_STEP: f64 = 1e-4;

/// Upper bound on the index of the second family.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReportCase2<T> {
    /// `(8/3)𝒥1 + (1/3)𝒥3`.
    pub bound: T,
    pub j1cal: T,
    pub j3cal: T,
    /// `1 − b0`, the lower bound on the bottom of the spectrum of `ℓ4`.
    pub alpha0_lower: T,
    /// The inner products the bound is assembled from, keyed by name.
    pub inner: BTreeMap<&'static str, T>,
}

impl<T: Real> StabilityReportCase2<T> {
    pub fn negative(&self) -> bool {
        self.bound < T::zero()
    }
}

fn profile_at<T: Real>(wave: &WaveCase2<T>, k: T) -> CnoidalWave<T> {
    let m = Modulus::new(k).expect("k step stays inside (0, 1)");
    WaveCase2::with_parameter(wave.period(), m, wave.sign(), case2_a(wave.period(), m)).profile()
}

pub fn bound_case2<T: Real>(wave: &WaveCase2<T>) -> Result<StabilityReportCase2<T>, StabilityError> {
    let alpha0_lower = T::one() - wave.b0();
    if alpha0_lower <= T::zero() {
        return Err(StabilityError::AlphaBound(alpha0_lower.as_f64()));
    }
    let (a, b) = (wave.a(), wave.b());
    let k = wave.modulus().k();
    let h = T::lit(K_STEP).min(k / T::lit(4.0)).min((T::one() - k) / T::lit(4.0));
    let prof = wave.profile();
    let n0 = prof.l2_norm_sq();
    let n1 = prof.derivative_norm_sq();
    let da_dk = case2_da_dk(wave.period(), wave.modulus());
    let da_dk_fd = richardson_diff(|kk| case2_a(wave.period(), Modulus::new(kk).unwrap()), k, h);
    let dn0 = richardson_diff(|kk| profile_at(wave, kk).l2_norm_sq(), k, h);
    let dn1 = richardson_diff(|kk| profile_at(wave, kk).derivative_norm_sq(), k, h);
    // (∂aφ, φ) = ½ d‖φ‖²/da and (∂aφ, φ'') = −½ d‖φ'‖²/da.
    let da_phi_phi = T::lit(0.5) * dn0 / da_dk;
    let da_phi_phi2 = -T::lit(0.5) * dn1 / da_dk;
    let j1cal = (a + b) * da_phi_phi - b * (a + b) * da_phi_phi2 - n0 - b * n1;
    let r = b / (T::lit(2.0) * a);
    let lead = (T::one() + b / a) * (T::one() + b / a) / alpha0_lower;
    let j3cal = -b * b / (T::lit(2.0) * a) * n1 + (lead - (T::lit(2.0) - r) * r) * n0;
    let bound = T::lit(8.0) / T::lit(3.0) * j1cal + j3cal / T::lit(3.0);
    let mut map = BTreeMap::new();
    map.insert("(phi,phi)", n0);
    map.insert("(phi',phi')", n1);
    map.insert("(d_a phi,phi)", da_phi_phi);
    map.insert("(d_a phi,phi'')", da_phi_phi2);
    map.insert("da/dk", da_dk);
    map.insert("da/dk (difference)", da_dk_fd);
    Ok(StabilityReportCase2 { bound, j1cal, j3cal, alpha0_lower, inner: map })
}

/// Discrete counterparts of the pieces of the bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundCrossCheck<T> {
    /// `(ℓ3⁺ f0, f0)` with `f0 = φ − bφ''`.
    pub j1_discrete: T,
    /// `(ℓ4⁻¹ f0, f0)`; bounded above by `𝒥3`.
    pub j2_discrete: T,
    /// `max|ℓ4⁻¹(aφ'' + φ) − φ/2| / max|φ|`.
    pub l4_identity: T,
    /// `max|ℓ3⁺(aφ'' + φ) + φ| / max|φ|`.
    pub l3_identity: T,
    pub grid: usize,
}

pub fn bound_case2_crosscheck<T: Real>(wave: &WaveCase2<T>, n: usize) -> Result<BoundCrossCheck<T>, StabilityError> {
    check_grid(n)?;
    let w = Wave::Case2(*wave);
    let (a, b) = (wave.a(), wave.b());
    let grid = periodic_grid(wave.period(), n);
    let jets = wave.profile().sample_jets(&grid);
    let f0: Vec<T> = jets.iter().map(|j| j.phi - b * j.d2).collect();
    let g0: Vec<T> = jets.iter().map(|j| a * j.d2 + j.phi).collect();
    let phi: Vec<T> = jets.iter().map(|j| j.phi).collect();
    let phi_max = max_abs(&phi);
    let dx = wave.period() / T::from_count(n);

    let l4 = HillOperator::for_wave(HillKind::L4, &w)?.matrix(n)?.to_dense();
    let j2_discrete = inner(&lu_solve(&l4, &f0)?, &f0, dx);
    let y = lu_solve(&l4, &g0)?;
    let l4_identity = y.iter().zip(&phi).fold(T::zero(), |m, (&u, &p)| m.max((u - p / T::lit(2.0)).abs())) / phi_max;

    // ℓ3 has the odd kernel φ'; f0 and g0 are even, so the rank-one shift
    // along φ' leaves their solutions equal to the pseudo-inverse ones.
    let l3 = HillOperator::for_wave(HillKind::L3, &w)?.matrix(n)?.to_dense();
    let v: Vec<T> = jets.iter().map(|j| j.d1).collect();
    let nv = v.iter().map(|&x| x * x).sum::<T>().sqrt();
    let v: Vec<T> = v.iter().map(|&x| x / nv).collect();
    let shifted = DenseMatrix::from_fn(n, n, |i, j| l3[(i, j)] + v[i] * v[j]);
    let j1_discrete = inner(&lu_solve(&shifted, &f0)?, &f0, dx);
    let z = lu_solve(&shifted, &g0)?;
    let l3_identity = z.iter().zip(&phi).fold(T::zero(), |m, (&u, &p)| m.max((u + p).abs())) / phi_max;

    Ok(BoundCrossCheck { j1_discrete, j2_discrete, l4_identity, l3_identity, grid: n })
}
