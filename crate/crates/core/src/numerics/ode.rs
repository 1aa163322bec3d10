use super::{NumericsError, ToleranceSpec};
use crate::Real;

/// Counters reported alongside the final state.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct IvpStats {
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
    /// Largest scaled error norm among accepted steps (≤ 1 by construction).
    pub max_error_norm: f64,
    pub last_step: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IvpSolution<T> {
    pub t: T,
    pub y: Vec<T>,
    pub stats: IvpStats,
}

// Dormand–Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// Difference between the 5th and embedded 4th order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

const SAFETY: f64 = 0.9;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;
const BETA: f64 = 0.04;

/// Integrate `y' = f(t, y)` from `span.0` to `span.1` with the Dormand–Prince
/// 5(4) pair under PI step-size control.
///
/// The step sequence depends only on the inputs, so repeated calls give
/// bit-identical results.
pub fn integrate_ivp<T, F>(
    mut rhs: F,
    y0: &[T],
    span: (T, T),
    tol: ToleranceSpec<T>,
) -> Result<IvpSolution<T>, NumericsError>
where
    T: Real,
    F: FnMut(T, &[T], &mut [T]),
{
    let n = y0.len();
    let (t0, t1) = span;
    let mut stats = IvpStats::default();
    let mut y = y0.to_vec();
    if t1 == t0 {
        return Ok(IvpSolution { t: t0, y, stats });
    }
    let dir = if t1 > t0 { T::one() } else { -T::one() };
    let mut k: Vec<Vec<T>> = vec![vec![T::zero(); n]; 7];
    let mut stage = vec![T::zero(); n];
    let mut y_new = vec![T::zero(); n];

    rhs(t0, &y, &mut k[0]);
    stats.evaluations += 1;
    let mut h = initial_step(&mut rhs, t0, &y, &k[0], dir, tol, &mut stats);
    let mut t = t0;
    let mut err_old = T::lit(1e-4);
    let mut last_rejected = false;
    let span_len = (t1 - t0).abs();

    loop {
        if stats.accepted + stats.rejected >= tol.max_steps {
            return Err(NumericsError::MaxStepsExceeded { max_steps: tol.max_steps, t: t.as_f64() });
        }
        let remaining = (t1 - t).abs();
        let mut last = false;
        if h.abs() >= remaining {
            h = dir * remaining;
            last = true;
        }
        if h.abs() <= T::lit(16.0) * T::epsilon() * t.abs().max(span_len) {
            return Err(NumericsError::StepUnderflow { t: t.as_f64(), h: h.as_f64() });
        }

        for s in 1..7 {
            for i in 0..n {
                let mut acc = T::zero();
                for (j, kj) in k.iter().enumerate().take(s) {
                    let a = A[s][j];
                    if a != 0.0 {
                        acc = acc + T::lit(a) * kj[i];
                    }
                }
                stage[i] = y[i] + h * acc;
            }
            let (done, rest) = k.split_at_mut(s);
            let _ = done;
            rhs(t + T::lit(C[s]) * h, &stage, &mut rest[0]);
        }
        stats.evaluations += 6;
        // Stage 7 is evaluated at the 5th-order solution (FSAL).
        y_new.copy_from_slice(&stage);

        let mut sum = T::zero();
        for i in 0..n {
            let mut e = T::zero();
            for (j, kj) in k.iter().enumerate() {
                if E[j] != 0.0 {
                    e = e + T::lit(E[j]) * kj[i];
                }
            }
            let scale = tol.abs_tol + tol.rel_tol * y[i].abs().max(y_new[i].abs());
            let r = h * e / scale;
            sum = sum + r * r;
        }
        let err = (sum / T::from_count(n.max(1))).sqrt();
        if !err.is_finite() {
            return Err(NumericsError::NonFinite("integrate_ivp"));
        }

        if err <= T::one() {
            let fac = if err == T::zero() {
                T::lit(FAC_MAX)
            } else {
                let expo = T::lit(0.2 - 0.75 * BETA);
                T::lit(SAFETY) * err.powf(-expo) * err_old.powf(T::lit(BETA))
            };
            let mut fac = fac.max(T::lit(FAC_MIN)).min(T::lit(FAC_MAX));
            if last_rejected {
                fac = fac.min(T::one());
            }
            stats.accepted += 1;
            stats.max_error_norm = stats.max_error_norm.max(err.as_f64());
            stats.last_step = h.abs().as_f64();
            t = if last { t1 } else { t + h };
            std::mem::swap(&mut y, &mut y_new);
            k.swap(0, 6);
            err_old = err.max(T::lit(1e-4));
            last_rejected = false;
            if last {
                return Ok(IvpSolution { t, y, stats });
            }
            h = h * fac;
        } else {
            stats.rejected += 1;
            let fac = (T::lit(SAFETY) * err.powf(-T::lit(0.2))).max(T::lit(FAC_MIN));
            h = h * fac;
            last_rejected = true;
        }
    }
}

/// Starting step from the size of `y`, `f(y)` and a trial second derivative.
fn initial_step<T, F>(
    rhs: &mut F,
    t0: T,
    y0: &[T],
    f0: &[T],
    dir: T,
    tol: ToleranceSpec<T>,
    stats: &mut IvpStats,
) -> T
where
    T: Real,
    F: FnMut(T, &[T], &mut [T]),
{
    let n = y0.len();
    let nn = T::from_count(n.max(1));
    let scale = |i: usize| tol.abs_tol + tol.rel_tol * y0[i].abs();
    let d0 = (y0.iter().enumerate().map(|(i, &v)| (v / scale(i)).powi(2)).sum::<T>() / nn).sqrt();
    let d1 = (f0.iter().enumerate().map(|(i, &v)| (v / scale(i)).powi(2)).sum::<T>() / nn).sqrt();
    let tiny = T::lit(1e-5);
    let mut h0 = if d0 < tiny || d1 < tiny { T::lit(1e-6) } else { T::lit(0.01) * d0 / d1 };
    let y1: Vec<T> = y0.iter().zip(f0).map(|(&y, &f)| y + dir * h0 * f).collect();
    let mut f1 = vec![T::zero(); n];
    rhs(t0 + dir * h0, &y1, &mut f1);
    stats.evaluations += 1;
    let d2 = (f1
        .iter()
        .zip(f0)
        .enumerate()
        .map(|(i, (&a, &b))| ((a - b) / scale(i)).powi(2))
        .sum::<T>()
        / nn)
        .sqrt()
        / h0;
    let big = d1.max(d2);
    let h1 = if big <= T::lit(1e-15) {
        (h0 * T::lit(1e-3)).max(T::lit(1e-6))
    } else {
        (T::lit(0.01) / big).powf(T::lit(0.2))
    };
    h0 = (T::lit(100.0) * h0).min(h1);
    dir * h0
}
