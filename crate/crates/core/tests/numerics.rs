use cnoidal::numerics::{
    adaptive_quadrature, bisect, eig_symmetric, fourier_d2, integrate_ivp, lu_solve, richardson_diff, DenseMatrix,
    NumericsError, QuadratureTolerance, SymmetricMatrix, ToleranceSpec,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn tol(t: f64) -> ToleranceSpec<f64> {
    ToleranceSpec::new(t, t, 1_000_000).unwrap()
}

fn oscillator(tl: f64) -> (f64, usize) {
    let s = integrate_ivp(|_, y, d| { d[0] = y[1]; d[1] = -y[0]; }, &[1.0, 0.0], (0.0, 2.0 * PI), tol(tl)).unwrap();
    ((s.y[0] - 1.0).abs().max(s.y[1].abs()), s.stats.accepted)
}

#[test]
fn exponential_and_oscillator() {
    let s = integrate_ivp(|_, y, d| d[0] = y[0], &[1.0], (0.0, 1.0), tol(1e-12)).unwrap();
    assert!((s.y[0] - std::f64::consts::E).abs() < 1e-10);
    assert!(oscillator(1e-12).0 < 1e-9);
}

#[test]
fn step_count_scales_like_fifth_order() {
    // With a 5th-order local error, 32x tighter tolerance should double the steps.
    for t in [1e-5, 1e-7, 1e-9] {
        let (_, n1) = oscillator(t);
        let (_, n2) = oscillator(t / 32.0);
        let ratio = n2 as f64 / n1 as f64;
        assert!((1.6..2.6).contains(&ratio), "tol {t}: {n1} -> {n2}");
    }
    let (e1, _) = oscillator(1e-6);
    let (e2, _) = oscillator(1e-10);
    assert!(e2 < e1 * 1e-2);
}

#[test]
fn mathieu_matches_power_series() {
    // y'' = 2cos(2x) y, y(0) = 1, y'(0) = 0, expanded to order 30.
    let order = 30;
    let mut cos2 = vec![0.0; order + 1];
    let mut term = 1.0;
    for n in 0..=order / 2 {
        if n > 0 {
            term *= -4.0 / ((2 * n - 1) as f64 * (2 * n) as f64);
        }
        cos2[2 * n] = term;
    }
    let mut c = vec![0.0; order + 3];
    c[0] = 1.0;
    for j in 0..=order {
        let conv: f64 = (0..=j).map(|i| cos2[i] * c[j - i]).sum();
        c[j + 2] = 2.0 * conv / ((j + 2) as f64 * (j + 1) as f64);
    }
    for x in [0.1f64, 0.3, 0.5] {
        let series: f64 = c.iter().enumerate().map(|(j, &cj)| cj * x.powi(j as i32)).sum();
        let dseries: f64 = c.iter().enumerate().skip(1).map(|(j, &cj)| j as f64 * cj * x.powi(j as i32 - 1)).sum();
        let s = integrate_ivp(
            |t, y, d| { d[0] = y[1]; d[1] = 2.0 * (2.0 * t).cos() * y[0]; },
            &[1.0, 0.0],
            (0.0, x),
            tol(1e-13),
        )
        .unwrap();
        assert!((s.y[0] - series).abs() < 1e-11, "{x}");
        assert!((s.y[1] - dseries).abs() < 1e-11, "{x}");
    }
}

#[test]
fn step_budget_error() {
    let t = ToleranceSpec::new(1e-12, 1e-12, 10).unwrap();
    let r = integrate_ivp(|_, y, d| d[0] = y[0], &[1.0], (0.0, 10.0), t);
    assert!(matches!(r, Err(NumericsError::MaxStepsExceeded { .. })));
}

#[test]
fn eig_examples() {
    let mut m = SymmetricMatrix::zeros(3);
    m.set(0, 0, 3.0);
    m.set(1, 1, 1.0);
    m.set(2, 2, 2.0);
    assert_eq!(eig_symmetric(&m).unwrap().values, vec![1.0, 2.0, 3.0]);
    let m = SymmetricMatrix::from_fn(2, |i, j| if i == j { 0.0f64 } else { 1.0 });
    let e = eig_symmetric(&m).unwrap();
    assert!((e.values[0] + 1.0).abs() < 1e-15 && (e.values[1] - 1.0).abs() < 1e-15);
}

fn random_symmetric(n: usize, seed: u64) -> SymmetricMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = SymmetricMatrix::zeros(n);
    for i in 0..n {
        for j in 0..=i {
            m.set(i, j, rng.gen_range(-1.0..1.0));
        }
    }
    m
}

#[test]
fn eig_random_50() {
    let m = random_symmetric(50, 3);
    let e = eig_symmetric(&m).unwrap();
    let sum: f64 = e.values.iter().sum();
    assert!((sum - m.trace()).abs() <= 1e-10 * m.trace().abs().max(1.0));
    let norm = m.frobenius_norm();
    for j in 0..50 {
        let v = e.vector(j);
        let mv = m.mul_vec(&v);
        let r = mv.iter().zip(&v).map(|(a, b)| (a - e.values[j] * b).powi(2)).sum::<f64>().sqrt();
        assert!(r <= 1e-10 * norm);
    }
    let q = e.vectors.transpose().mul(&e.vectors);
    for i in 0..50 {
        for j in 0..50 {
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((q[(i, j)] - want).abs() <= 1e-10);
        }
    }
}

#[test]
fn scalar_kernels() {
    let q = adaptive_quadrature(f64::sin, 0.0, PI, QuadratureTolerance { abs: 1e-14, rel: 1e-14 }).unwrap();
    assert!((q - 2.0).abs() < 1e-12);
    let r = bisect(|x| x * x - 2.0, 1.0, 2.0, 1e-12).unwrap();
    assert!((r - 2f64.sqrt()).abs() < 1e-10);
    assert!((richardson_diff(f64::exp, 0.0, 1e-3) - 1.0).abs() < 1e-10);
}

#[test]
fn collocation_second_derivative() {
    let l = 3.0;
    let n = 32;
    let d2 = fourier_d2(n, l).unwrap();
    let x: Vec<f64> = (0..n).map(|j| j as f64 * l / n as f64).collect();
    let f: Vec<f64> = x.iter().map(|&t| (2.0 * PI * 3.0 * t / l).sin()).collect();
    let g = d2.mul_vec(&f);
    let w = (2.0 * PI * 3.0 / l).powi(2);
    for (a, b) in g.iter().zip(&f) {
        assert!((a + w * b).abs() < 1e-9);
    }
    assert!(matches!(fourier_d2::<f64>(7, l), Err(NumericsError::OddGrid(7))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn lu_solves(seed in any::<u64>(), n in 2usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = DenseMatrix::from_fn(n, n, |i, j| rng.gen_range(-1.0..1.0) + if i == j { n as f64 } else { 0.0 });
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let got = lu_solve(&a, &a.mul_vec(&x)).unwrap();
        for (g, w) in got.iter().zip(&x) {
            prop_assert!((g - w).abs() < 1e-12);
        }
    }

    #[test]
    fn eig_trace_and_order(seed in any::<u64>(), n in 1usize..20) {
        let m = random_symmetric(n, seed);
        let e = eig_symmetric(&m).unwrap();
        prop_assert!(e.values.windows(2).all(|p| p[0] <= p[1]));
        prop_assert!((e.values.iter().sum::<f64>() - m.trace()).abs() <= 1e-10 * m.frobenius_norm().max(1.0));
    }

    #[test]
    fn bisect_brackets_root(r in -5.0f64..5.0) {
        let x = bisect(|x: f64| x.powi(3) - r, -3.0, 3.0, 1e-12).unwrap();
        prop_assert!((x - r.cbrt()).abs() < 1e-10);
    }
}
