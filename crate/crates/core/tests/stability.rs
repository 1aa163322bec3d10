use cnoidal::elliptic::Modulus;
use cnoidal::stability::{
    bound_case2, bound_case2_crosscheck, check_h2, d_omega, find_bstar, index_case1, index_case1_closed_form,
    threshold_at, OmegaParameter, QFunctional, StabilityError,
};
use cnoidal::waves::{case1_coefficients, BSign, Wave, WaveCase1, WaveCase2};
use cnoidal::periodic_grid;
use cnoidal::hill::assemble_l;
use proptest::prelude::*;
use std::f64::consts::PI;

fn md(k: f64) -> Modulus<f64> {
    Modulus::new(k).unwrap()
}

fn w1(l: f64, b: f64, w: f64, k: f64, s: BSign) -> WaveCase1<f64> {
    WaveCase1::build(l, b, w, md(k), s).unwrap()
}

fn w2(l: f64, k: f64, s: BSign) -> WaveCase2<f64> {
    WaveCase2::build(l, md(k), s).unwrap()
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

fn default_grids() -> (Vec<f64>, Vec<Modulus<f64>>) {
    (linspace(-0.99, 0.99, 11), linspace(0.01, 0.70, 8).into_iter().map(md).collect())
}

#[test]
fn d_omega_big_b_at_rest() {
    let w = w1(1.0, 1.0, 0.0, 0.5, BSign::Plus);
    let d = d_omega(OmegaParameter::B, &w, 1e-4).unwrap();
    assert_eq!(d.analytic, Some(-0.5));
    assert!((d.value + 0.5).abs() < 1e-10);
    let d = d_omega(OmegaParameter::B, &w1(1.0, 1.0, 0.4, 0.5, BSign::Minus), 1e-4).unwrap();
    let exact = -0.5 - 0.4 / (2.0 * (0.16f64 + 8.0).sqrt());
    assert!((d.analytic.unwrap() - exact).abs() < 1e-15);
}

#[test]
fn d_omega_matches_five_point_stencil() {
    let w = w1(1.0, 1.0, 0.0, 0.5, BSign::Plus);
    for p in [OmegaParameter::B0, OmegaParameter::B2, OmegaParameter::A1, OmegaParameter::A2] {
        let h = 1e-3;
        let f = |om: f64| {
            let c = case1_coefficients(1.0, 1.0, om, md(0.5), BSign::Plus);
            match p {
                OmegaParameter::B0 => c.b0,
                OmegaParameter::B2 => c.b2,
                OmegaParameter::A1 => c.a1,
                OmegaParameter::A2 => c.a2,
                OmegaParameter::B => c.big_b,
            }
        };
        let stencil = (f(-2.0 * h) - 8.0 * f(-h) + 8.0 * f(h) - f(2.0 * h)) / (12.0 * h);
        let d = d_omega(p, &w, 1e-4).unwrap();
        assert!(d.analytic.is_none());
        assert!((d.value - stencil).abs() <= 1e-8 * stencil.abs().max(1.0), "{p:?} {} {stencil}", d.value);
    }
}

#[test]
fn d_omega_margin_guard() {
    let w = w1(1.0, 1.0, 0.99, 0.5, BSign::Plus);
    assert!(matches!(d_omega(OmegaParameter::A1, &w, 6e-3), Err(StabilityError::OmegaMargin { .. })));
    assert!(d_omega(OmegaParameter::A1, &w, 4e-3).is_ok());
}

#[test]
fn index_examples_and_composition() {
    for w in [w1(1.0, 0.01, 0.0, 0.3, BSign::Plus), w1(2.0 * PI, 0.07, 0.5, 0.5, BSign::Plus)] {
        let r = index_case1(&w).unwrap();
        assert!(r.i < 0.0);
        assert_eq!(r.i, r.i0 + r.i1 + r.i2);
        assert!(r.route_agreement().unwrap() <= 1e-6);
        assert!(r.orthogonality.unwrap() <= 1e-8);
        // The lowercase-b reading of I2 is far from the direct inner product.
        let d = r.i_direct.unwrap();
        assert!((r.i_lowercase_b() - d).abs() > 1e-2 * d.abs());
        assert_eq!(index_case1_closed_form(w.period(), w.b(), w.omega(), w.modulus(), w.sign()), r.i);
    }
}

#[test]
fn index_guards() {
    let w = w1(1.0, 1.0, 0.0, 0.706, BSign::Plus);
    assert!(matches!(index_case1(&w), Err(StabilityError::Guard { name: "k", .. })));
    let w = w1(1.0, 1.0, 0.995, 0.3, BSign::Plus);
    assert!(matches!(index_case1(&w), Err(StabilityError::Guard { name: "omega", .. })));
}

#[test]
fn q_gradient_equals_l_phi() {
    let w = w1(2.0 * PI, 0.5, 0.3, 0.4, BSign::Minus);
    let q = QFunctional::case1(&w, 1e-4).unwrap();
    let wave = Wave::Case1(w);
    let n = 128;
    let grid = periodic_grid(w.period(), n);
    let (g1, g2) = q.gradient(&wave, &grid);
    // Φ = ∂ω(φ, Bφ) by a five-point stencil on constructed waves.
    let h = 1e-3;
    let sample = |om: f64| {
        let p = w1(w.period(), w.b(), om, 0.4, BSign::Minus).profile();
        let v = p.sample(&grid);
        let bv: Vec<f64> = v.iter().map(|x| p.big_b() * x).collect();
        (v, bv)
    };
    let s: Vec<_> = [-2.0, -1.0, 1.0, 2.0].iter().map(|&j| sample(0.3 + j * h)).collect();
    let st = |a: &[f64], b: &[f64], c: &[f64], d: &[f64]| -> Vec<f64> {
        (0..n).map(|i| (a[i] - 8.0 * b[i] + 8.0 * c[i] - d[i]) / (12.0 * h)).collect()
    };
    let f = st(&s[0].0, &s[1].0, &s[2].0, &s[3].0);
    let g = st(&s[0].1, &s[1].1, &s[2].1, &s[3].1);
    let (lf, lg) = assemble_l(&wave, n).unwrap().apply(&f, &g).unwrap();
    let scale = g1.iter().chain(&g2).fold(0.0f64, |m, v| m.max(v.abs()));
    let err = lf.iter().zip(&g1).chain(lg.iter().zip(&g2)).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    assert!(err <= 1e-7 * scale, "{err} {scale}");
}

#[test]
fn bstar_threshold_and_scaling() {
    let (om, ks) = default_grids();
    let one = find_bstar(1.0, &om, &ks, BSign::Plus).unwrap();
    assert!((0.00160..=0.00178).contains(&one.bstar), "{}", one.bstar);
    assert_eq!(one.per_point.len(), 88);
    let two_pi = find_bstar(2.0 * PI, &om, &ks, BSign::Plus).unwrap();
    let ratio = two_pi.bstar / one.bstar / (4.0 * PI * PI);
    assert!((ratio - 1.0).abs() < 0.05);
    // Straddling the threshold flips the sign of I.
    let p = one.per_point.iter().max_by(|a, b| a.threshold.total_cmp(&b.threshold)).unwrap();
    let i = |b: f64| index_case1_closed_form(1.0, b, p.omega, md(p.k), BSign::Plus);
    assert!(i(p.threshold * 1.001) < 0.0 && i(p.threshold * 0.999) > 0.0);
    let minus = find_bstar(1.0, &om, &ks, BSign::Minus).unwrap();
    assert!((minus.bstar / one.bstar - 1.0).abs() < 1e-4);
}

#[test]
fn single_point_threshold_below_supremum() {
    let (om, ks) = default_grids();
    let sup = find_bstar(1.0, &om, &ks, BSign::Plus).unwrap().bstar;
    let t = threshold_at(1.0, 0.0, md(0.01), BSign::Plus).unwrap();
    assert!(t > 0.0 && t < sup);
    assert!(matches!(find_bstar(1.0, &[], &ks, BSign::Plus), Err(StabilityError::EmptyGrid)));
}

#[test]
fn bound_negative_for_long_waves() {
    for l in [2.0 * PI, 50.0, 100.0] {
        for k in linspace(0.05, 0.95, 10) {
            let r = bound_case2(&w2(l, k, BSign::Plus)).unwrap();
            assert!(r.negative(), "L={l} k={k} bound={}", r.bound);
            assert_eq!(r.bound, 8.0 / 3.0 * r.j1cal + r.j3cal / 3.0);
            assert!(r.alpha0_lower > 0.0);
        }
    }
}

#[test]
fn bound_analytic_da_dk_matches_difference() {
    for k in [0.1, 0.5, 0.9] {
        let r = bound_case2(&w2(2.0 * PI, k, BSign::Minus)).unwrap();
        let (a, d) = (r.inner["da/dk"], r.inner["da/dk (difference)"]);
        assert!((a - d).abs() <= 1e-8 * a.abs(), "{a} {d}");
    }
}

#[test]
fn bound_crosschecks_against_discrete_solves() {
    for l in [1.0, 2.0 * PI, 50.0] {
        for k in [0.1, 0.5, 0.9] {
            let w = w2(l, k, BSign::Plus);
            let r = bound_case2(&w).unwrap();
            let c = bound_case2_crosscheck(&w, 256).unwrap();
            assert!(((c.j1_discrete - r.j1cal) / r.j1cal).abs() <= 1e-5, "L={l} k={k}");
            assert!(c.j2_discrete <= r.j3cal);
            assert!(c.l4_identity <= 1e-6 && c.l3_identity <= 1e-6, "{c:?}");
        }
    }
}

#[test]
fn h2_verdicts() {
    let v = check_h2(&Wave::Case1(w1(1.0, 0.01, 0.0, 0.3, BSign::Plus))).unwrap();
    assert!(v.pass && v.negative && v.h4_value != 0.0);
    let v = check_h2(&Wave::Case1(w1(1.0, 1e-5, 0.0, 0.3, BSign::Plus))).unwrap();
    assert!(!v.pass && v.value >= 0.0);
    for k in [0.2, 0.6] {
        let v = check_h2(&Wave::Case2(w2(2.0 * PI, k, BSign::Minus))).unwrap();
        assert!(v.pass, "{v:?}");
        assert!(v.orthogonality_residual <= 1e-8 && v.kernel_residual <= 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn two_routes_agree(b in 0.05f64..5.0, w in -0.9f64..0.9, k in 0.05f64..0.7, plus in any::<bool>()) {
        let s = if plus { BSign::Plus } else { BSign::Minus };
        let r = index_case1(&w1(2.0 * PI, b, w, k, s)).unwrap();
        prop_assert_eq!(r.i, r.i0 + r.i1 + r.i2);
        prop_assert!(r.route_agreement().unwrap() <= 1e-6);
    }

    #[test]
    fn mirror_leaves_index_unchanged(b in 0.05f64..5.0, w in -0.9f64..0.9, k in 0.05f64..0.7) {
        let p = index_case1_closed_form(1.0, b, w, md(k), BSign::Plus);
        let m = index_case1_closed_form(1.0, b, -w, md(k), BSign::Minus);
        prop_assert!((p - m).abs() <= 1e-6 * p.abs().max(1e-12));
    }

    #[test]
    fn alpha_bound_positive(k in 0.01f64..0.99, l in 0.5f64..200.0) {
        prop_assert!(bound_case2(&w2(l, k, BSign::Plus)).unwrap().alpha0_lower > 0.0);
    }
}
