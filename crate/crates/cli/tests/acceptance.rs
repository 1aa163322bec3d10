//! Acceptance criteria 1-9, one PASS/FAIL line each. Exits non-zero if any
//! criterion fails.

use cnoidal::elliptic::{complete_e, complete_k, jacobi, periodic_integrals, Modulus};
use cnoidal::hill::{inertia_of_l, similarity_check, Congruence, HillOperator, spectrum};
use cnoidal::numerics::{adaptive_quadrature, QuadratureTolerance};
use cnoidal::stability::{bound_case2, bound_case2_crosscheck, find_bstar, index_case1};
use cnoidal::waves::{residual_system, BSign, Wave, WaveCase1, WaveCase2};
use cnoidal::periodic_grid;
use cnoidal_cli::reference::TableId;
use cnoidal_cli::sweeps::{figure_rows, theta_rows, FigureResolution, ThetaRow};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, PI};
use std::time::Instant;

const THETA_REL: f64 = 0.02;
const THETA_SECONDS: f64 = 60.0;
const RESIDUAL_REL: f64 = 1e-9;
const CASE2_CONSTANTS: f64 = 1e-10;
const SIMILARITY_REL: f64 = 1e-9;
const ORTHOGONALITY: f64 = 1e-12;
const INDEX_ROUTES_REL: f64 = 1e-6;
const J1_ROUTES_REL: f64 = 1e-5;
const ALIGNMENT: f64 = 0.999;
const BSTAR_RANGE: (f64, f64) = (0.00160, 0.00178);
const BSTAR_SCALING: f64 = 0.05;
const ELLIPTIC_ABS: f64 = 1e-12;
const INTEGRALS_REL: f64 = 1e-10;

struct Outcome {
    pass: bool,
    detail: String,
}

fn md(k: f64) -> Modulus<f64> {
    Modulus::new(k).unwrap()
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| {
        let t = i as f64 / (n - 1) as f64;
        a * (1.0 - t) + b * t
    }).collect()
}

fn sign(plus: bool) -> BSign {
    if plus { BSign::Plus } else { BSign::Minus }
}

fn theta_outcome(rows: &[ThetaRow], seconds: f64) -> Outcome {
    let bad: Vec<&ThetaRow> = rows.iter().filter(|r| !r.sign_match() || r.rel_dev() > THETA_REL).collect();
    let worst = rows.iter().map(ThetaRow::rel_dev).fold(0.0, f64::max);
    let mut detail = format!(
        "{}/{} entries within {:.0}% with matching sign, worst deviation {:.3}, {:.1}s",
        rows.len() - bad.len(),
        rows.len(),
        THETA_REL * 100.0,
        worst,
        seconds
    );
    if let Some(r) = bad.first() {
        let e = r.entry;
        detail += &format!(
            "; first miss: table {} L={:.4} b={:?} omega={} k={} computed {:.6e} printed {:.6e}",
            e.table.number(),
            e.period,
            e.b,
            e.omega,
            e.k,
            r.theta,
            e.theta
        );
    }
    Outcome { pass: bad.is_empty() && seconds <= THETA_SECONDS, detail }
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let rows = theta_rows(&TableId::ALL).expect("theta over the printed grids");
    theta_outcome(&rows, t.elapsed().as_secs_f64())
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let rows = theta_rows(&[TableId::T4]).expect("theta over the second-family grid");
    theta_outcome(&rows, t.elapsed().as_secs_f64())
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut waves: Vec<Wave<f64>> = (0..20)
        .map(|_| {
            let l = [1.0, 2.0 * PI, 10.0][rng.gen_range(0..3)];
            let w = WaveCase1::build(
                l,
                rng.gen_range(0.05..20.0),
                rng.gen_range(-0.9..0.9),
                md(rng.gen_range(0.15..0.70)),
                sign(rng.gen_bool(0.5)),
            );
            w.unwrap().into()
        })
        .collect();
    waves.extend((0..10).map(|_| {
        let l = [1.0, 2.0 * PI, 50.0][rng.gen_range(0..3)];
        Wave::from(WaveCase2::build(l, md(rng.gen_range(0.15..0.95)), sign(rng.gen_bool(0.5))).unwrap())
    }));
    let failures: Vec<String> = waves
        .par_iter()
        .filter_map(|w| {
            let r = match inertia_of_l(w, 128) {
                Ok(r) => r,
                Err(e) => return Some(format!("case {} L={}: {e}", w.case_number(), w.period())),
            };
            let second = HillOperator::for_wave(r.kinds[1], w).unwrap();
            let lowest = spectrum(&second, 128).unwrap().eigenvalues[0];
            let ok = (r.n, r.z) == (1, 1)
                && (r.parts[1].n_count, r.parts[1].z_count) == (0, 0)
                && lowest > 0.0
                && r.direct.zero_mode_alignment >= ALIGNMENT;
            (!ok).then(|| format!("case {} L={} k={}: in=({}, {})", w.case_number(), w.period(), w.modulus().k(), r.n, r.z))
        })
        .collect();
    Outcome {
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            "inertia (1,1), second operator positive, alignment >= 0.999 on 20 + 10 random points".into()
        } else {
            failures.join("; ")
        },
    }
}

fn criterion_4() -> Outcome {
    let om = linspace(-0.99, 0.99, 11);
    let ks: Vec<_> = linspace(0.01, 0.70, 8).into_iter().map(md).collect();
    let one = find_bstar(1.0, &om, &ks, BSign::Plus).unwrap().bstar;
    let two_pi = find_bstar(2.0 * PI, &om, &ks, BSign::Plus).unwrap().bstar;
    let ratio = two_pi / one / (4.0 * PI * PI);
    let pass = (BSTAR_RANGE.0..=BSTAR_RANGE.1).contains(&one) && (ratio - 1.0).abs() <= BSTAR_SCALING;
    Outcome { pass, detail: format!("b*(1) = {one:.6e} (L^2/{:.2}), b*(2pi)/b*(1)/(2pi)^2 = {ratio:.6}", 1.0 / one) }
}

fn criterion_5() -> Outcome {
    let res = FigureResolution::default();
    let mut parts = Vec::new();
    let mut pass = true;
    for id in 2..=6u8 {
        let rows = figure_rows(id, None, res).expect("figure sweep");
        if id < 6 {
            let bad = rows.iter().filter(|r| r.row.value >= 0.0).count();
            pass &= bad == 0;
            parts.push(format!("fig {id}: {bad}/{} non-negative", rows.len()));
        } else {
            for (panel, l) in ['a', 'b', 'c', 'd'].into_iter().zip(cnoidal_cli::sweeps::FIGURE6_PERIODS) {
                let sub: Vec<_> = rows.iter().filter(|r| r.panel == panel).collect();
                let bad = sub.iter().filter(|r| r.row.value >= 0.0).count();
                let max = sub.iter().map(|r| r.row.value).fold(f64::MIN, f64::max);
                pass &= bad == 0;
                parts.push(format!("fig 6 L={l:.4}: {bad}/{} non-negative (max {max:.4e})", sub.len()));
            }
        }
    }
    Outcome { pass, detail: parts.join(", ") }
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    for i in 0..200 {
        let l = [1.0, 2.0 * PI, 50.0][rng.gen_range(0..3)];
        let s = sign(rng.gen_bool(0.5));
        let w: Wave<f64> = if i % 2 == 0 {
            match WaveCase1::build(l, rng.gen_range(0.01..20.0), rng.gen_range(-0.99..0.99), md(rng.gen_range(0.01..0.70)), s) {
                Ok(w) => w.into(),
                Err(_) => {
                    failures += 1;
                    continue;
                }
            }
        } else {
            match WaveCase2::build(l, md(rng.gen_range(0.01..0.99)), s) {
                Ok(w) => w.into(),
                Err(_) => {
                    failures += 1;
                    continue;
                }
            }
        };
        let r = residual_system(&w, &periodic_grid(l, 256));
        worst = worst.max(r.relative());
        if r.relative() > RESIDUAL_REL {
            failures += 1;
        }
    }
    let mut constants: f64 = 0.0;
    for k in linspace(0.01, 0.99, 99) {
        for l in [1.0, 2.0 * PI, 50.0, 100.0] {
            let w = WaveCase2::build(l, md(k), BSign::Plus).unwrap();
            constants = constants.max(w.a1().abs()).max(w.a2().abs());
        }
    }
    Outcome {
        pass: failures == 0 && constants <= CASE2_CONSTANTS,
        detail: format!("{failures}/200 draws failed, worst relative residual {worst:.2e}, max |A1|,|A2| = {constants:.2e}"),
    }
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let waves: Vec<Wave<f64>> = vec![
        WaveCase1::build(2.0 * PI, 1.0, 0.0, md(0.5), BSign::Plus).unwrap().into(),
        WaveCase1::build(1.0, 0.3, -0.6, md(0.3), BSign::Minus).unwrap().into(),
        WaveCase1::build(50.0, 5.0, 0.8, md(0.65), BSign::Plus).unwrap().into(),
        WaveCase2::build(2.0 * PI, md(0.5), BSign::Plus).unwrap().into(),
        WaveCase2::build(1.0, md(0.9), BSign::Minus).unwrap().into(),
        WaveCase2::build(100.0, md(0.2), BSign::Plus).unwrap().into(),
    ];
    let mut worst: f64 = 0.0;
    let mut defect: f64 = 0.0;
    for w in &waves {
        let l = w.period();
        let x = periodic_grid(l, 128);
        for _ in 0..3 {
            // Random trigonometric polynomials of degree <= 6.
            let coef: Vec<(f64, f64, f64, f64)> =
                (1..=6).map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let eval = |t: f64, second: bool| -> f64 {
                coef.iter()
                    .enumerate()
                    .map(|(j, c)| {
                        let a = 2.0 * PI * (j + 1) as f64 * t / l;
                        if second { c.2 * a.cos() + c.3 * a.sin() } else { c.0 * a.cos() + c.1 * a.sin() }
                    })
                    .sum()
            };
            let f: Vec<f64> = x.iter().map(|&t| eval(t, false)).collect();
            let g: Vec<f64> = x.iter().map(|&t| eval(t, true)).collect();
            worst = worst.max(similarity_check(w, &f, &g).unwrap().residual);
        }
        if w.case_number() == 2 {
            defect = defect.max(Congruence::for_wave(w).unwrap().orthogonality_defect());
        }
    }
    Outcome {
        pass: worst <= SIMILARITY_REL && defect <= ORTHOGONALITY,
        detail: format!("worst two-route relative difference {worst:.2e}, orthogonality defect {defect:.2e}"),
    }
}

fn criterion_8() -> Outcome {
    let mut pts = Vec::new();
    for b in [0.05, 0.5, 1.0, 5.0, 20.0] {
        for w in linspace(-0.9, 0.9, 5) {
            for k in linspace(0.05, 0.65, 5) {
                pts.push((b, w, k));
            }
        }
    }
    let index_worst = pts
        .par_iter()
        .map(|&(b, w, k)| {
            let wave = WaveCase1::build(2.0 * PI, b, w, md(k), BSign::Plus).unwrap();
            index_case1(&wave).unwrap().route_agreement().unwrap()
        })
        .reduce(|| 0.0, f64::max);
    let j1_worst = linspace(0.05, 0.95, 10)
        .par_iter()
        .map(|&k| {
            let w = WaveCase2::build(2.0 * PI, md(k), BSign::Plus).unwrap();
            let closed = bound_case2(&w).unwrap().j1cal;
            let disc = bound_case2_crosscheck(&w, 512).unwrap().j1_discrete;
            ((closed - disc) / closed).abs()
        })
        .reduce(|| 0.0, f64::max);
    Outcome {
        pass: index_worst <= INDEX_ROUTES_REL && j1_worst <= J1_ROUTES_REL,
        detail: format!("I closed form vs (LPhi,Phi) on 125 points: {index_worst:.2e}; J1 closed form vs L3 solve on 10 k: {j1_worst:.2e}"),
    }
}

fn criterion_9() -> Outcome {
    let mut legendre: f64 = 0.0;
    for k in linspace(0.02, 0.98, 49) {
        let kp = (1.0 - k * k).sqrt();
        let (kk, ee, kkp, eep) = (complete_k(md(k)), complete_e(md(k)), complete_k(md(kp)), complete_e(md(kp)));
        legendre = legendre.max((ee * kkp + eep * kk - kk * kkp - FRAC_PI_2).abs());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut ident: f64 = 0.0;
    for _ in 0..1000 {
        let k = rng.gen_range(0.001..0.999);
        let u = rng.gen_range(-20.0..20.0);
        let t = jacobi(u, md(k));
        let s = jacobi(u + 2.0 * complete_k(md(k)), md(k));
        ident = ident
            .max((t.sn * t.sn + t.cn * t.cn - 1.0).abs())
            .max((t.dn * t.dn + k * k * t.sn * t.sn - 1.0).abs())
            .max((s.cn + t.cn).abs());
    }
    let tol = QuadratureTolerance { abs: 1e-15, rel: 1e-13 };
    let mut integrals: f64 = 0.0;
    for k in linspace(0.01, 0.99, 20) {
        for l in [1.0, 2.0 * PI] {
            let lam = 2.0 * complete_k(md(k)) / l;
            let j = periodic_integrals(md(k), l).unwrap();
            let q = |p: fn(f64, f64, f64) -> f64| {
                adaptive_quadrature(|x: f64| { let t = jacobi(lam * x, md(k)); p(t.sn, t.cn, t.dn) }, 0.0, l, tol).unwrap()
            };
            let want = [q(|_, c, _| c * c), q(|_, c, _| c.powi(4)), q(|s, c, d| (s * c * d).powi(2))];
            for (got, want) in [j.j1, j.j2, j.j3].into_iter().zip(want) {
                integrals = integrals.max(((got - want) / want).abs());
            }
        }
    }
    Outcome {
        pass: legendre <= ELLIPTIC_ABS && ident <= ELLIPTIC_ABS && integrals <= INTEGRALS_REL,
        detail: format!("Legendre {legendre:.2e}, Jacobi identities {ident:.2e}, J1-J3 vs quadrature {integrals:.2e}"),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("Theta tables 1-4", criterion_1),
        ("second-family Theta table", criterion_2),
        ("inertia (1,1)", criterion_3),
        ("b* threshold", criterion_4),
        ("index and bound signs on figure grids", criterion_5),
        ("exact-solution residuals", criterion_6),
        ("congruence routes", criterion_7),
        ("cross-route index oracle", criterion_8),
        ("elliptic layer", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {} [{}] {}: {} ({:.1}s)",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            name,
            o.detail,
            t.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {}/9 criteria pass", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
