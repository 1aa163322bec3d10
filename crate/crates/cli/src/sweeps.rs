use crate::error::CliError;
use crate::grid::GridSpec;
use crate::reference::{theta_table, TableId, ThetaEntry};
use cnoidal::elliptic::Modulus;
use cnoidal::hill::{theta_constant, HillKind, HillOperator};
use cnoidal::stability::{bound_case2, check_h2, index_case1_with, IndexOptions};
use cnoidal::waves::{BSign, Wave, WaveCase1, WaveCase2};
use rayon::prelude::*;
use std::f64::consts::PI;

pub fn modulus(k: f64) -> Result<Modulus<f64>, CliError> {
    Ok(Modulus::new(k)?)
}

/// Θ for the operator that annihilates `φ'` (`L1` or `L3`).
pub fn theta_of(wave: &Wave<f64>) -> Result<f64, CliError> {
    let kind = if wave.case_number() == 1 { HillKind::L1 } else { HillKind::L3 };
    let op = HillOperator::for_wave(kind, wave)?;
    Ok(theta_constant(&op, &wave.profile())?.theta)
}

pub fn entry_wave(e: &ThetaEntry) -> Result<Wave<f64>, CliError> {
    let k = modulus(e.k)?;
    Ok(match e.b {
        Some(b) => WaveCase1::build(e.period, b, e.omega, k, e.sign)?.into(),
        None => WaveCase2::build(e.period, k, e.sign)?.into(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaRow {
    pub entry: ThetaEntry,
    pub theta: f64,
}

impl ThetaRow {
    pub fn rel_dev(&self) -> f64 {
        ((self.theta - self.entry.theta) / self.entry.theta).abs()
    }

    pub fn sign_match(&self) -> bool {
        self.theta.signum() == self.entry.theta.signum()
    }
}

/// Θ over the printed grids, in table order.
pub fn theta_rows(tables: &[TableId]) -> Result<Vec<ThetaRow>, CliError> {
    let entries: Vec<ThetaEntry> = tables.iter().flat_map(|&t| theta_table(t)).collect();
    entries
        .par_iter()
        .map(|e| Ok(ThetaRow { entry: *e, theta: theta_of(&entry_wave(e)?)? }))
        .collect()
}

/// One evaluated point of a stability sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityRow {
    pub case: u8,
    pub period: f64,
    pub b: f64,
    pub omega: f64,
    pub k: f64,
    pub sign: BSign,
    /// `I` for the first family, the upper bound for the second.
    pub value: f64,
    pub pass: bool,
}

fn case1_point(period: f64, b: f64, omega: f64, k: f64, sign: BSign, full: bool) -> Result<StabilityRow, CliError> {
    let w = WaveCase1::build(period, b, omega, modulus(k)?, sign)?;
    let (value, pass) = if full {
        let v = check_h2(&Wave::Case1(w))?;
        (v.value, v.pass)
    } else {
        let i = index_case1_with(&w, IndexOptions { direct_grid: None, ..IndexOptions::default() })?.i;
        (i, i < 0.0)
    };
    Ok(StabilityRow { case: 1, period, b, omega, k, sign, value, pass })
}

fn case2_point(period: f64, k: f64, sign: BSign, full: bool) -> Result<StabilityRow, CliError> {
    let w = WaveCase2::build(period, modulus(k)?, sign)?;
    let (value, pass) = if full {
        let v = check_h2(&Wave::Case2(w))?;
        (v.value, v.pass)
    } else {
        let b = bound_case2(&w)?.bound;
        (b, b < 0.0)
    };
    Ok(StabilityRow { case: 2, period, b: w.b(), omega: 0.0, k, sign, value, pass })
}

/// `(H2)` verdicts over `b × ω × k` (first family) or `k` (second family).
pub fn stability_sweep(
    case: u8,
    period: f64,
    b: &GridSpec,
    omega: &GridSpec,
    k: &GridSpec,
    sign: BSign,
) -> Result<Vec<StabilityRow>, CliError> {
    if case == 2 {
        return k.values.par_iter().map(|&k| case2_point(period, k, sign, true)).collect();
    }
    let points: Vec<(f64, f64, f64)> = b
        .values
        .iter()
        .flat_map(|&b| omega.values.iter().flat_map(move |&w| k.values.iter().map(move |&k| (b, w, k))))
        .collect();
    points.par_iter().map(|&(b, w, k)| case1_point(period, b, w, k, sign, true)).collect()
}

/// Resolution of the figure sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FigureResolution {
    /// Points along one-parameter panels.
    pub line: usize,
    /// Points per axis of the `(ω, k)` surface.
    pub surface: usize,
}

impl Default for FigureResolution {
    fn default() -> Self {
        Self { line: 100, surface: 41 }
    }
}

/// Sweep ranges of the figure panels.
pub const OMEGA_RANGE: (f64, f64) = (-0.99, 0.99);
pub const K_RANGE_CASE1: (f64, f64) = (0.01, 0.70);
pub const K_RANGE_CASE2: (f64, f64) = (0.01, 0.99);
pub const FIGURE6_PERIODS: [f64; 4] = [1.0, 2.0 * PI, 50.0, 100.0];

#[derive(Debug, Clone, Copy, PartialEq)]
struct Case1Figure {
    period: f64,
    b: f64,
    sign: BSign,
    /// ω held fixed in panel (a).
    omega_a: f64,
    /// k held fixed in panel (b).
    k_b: f64,
}

fn case1_figure(id: u8) -> Option<Case1Figure> {
    let f = |period, b, sign, omega_a, k_b| Some(Case1Figure { period, b, sign, omega_a, k_b });
    match id {
        2 => f(1.0, 0.002, BSign::Plus, 0.0, 0.3),
        3 => f(2.0 * PI, 0.07, BSign::Plus, 0.5, 0.5),
        4 => f(50.0, 4.23, BSign::Plus, -0.5, 0.01),
        5 => f(2.0 * PI, 0.07, BSign::Minus, 0.5, 0.5),
        _ => None,
    }
}

/// A figure-data row: the panel label plus the sweep point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureRow {
    pub figure: u8,
    pub panel: char,
    pub row: StabilityRow,
}

/// Data behind figures 2–6. `periods` overrides the `L` values of figure 6.
pub fn figure_rows(id: u8, periods: Option<&[f64]>, res: FigureResolution) -> Result<Vec<FigureRow>, CliError> {
    if id == 6 {
        let ls = periods.unwrap_or(&FIGURE6_PERIODS);
        let ks = GridSpec::linspace(K_RANGE_CASE2.0, K_RANGE_CASE2.1, res.line).values;
        let pts: Vec<(usize, f64, f64)> =
            ls.iter().enumerate().flat_map(|(i, &l)| ks.iter().map(move |&k| (i, l, k))).collect();
        return pts
            .par_iter()
            .map(|&(i, l, k)| {
                let panel = (b'a' + i as u8) as char;
                Ok(FigureRow { figure: 6, panel, row: case2_point(l, k, BSign::Plus, false)? })
            })
            .collect();
    }
    let fig = case1_figure(id).ok_or_else(|| CliError::Domain(format!("figure id {id} not in 2..=6")))?;
    if periods.is_some() {
        return Err(CliError::Domain(format!("figure {id} has a fixed period")));
    }
    let ws = GridSpec::linspace(OMEGA_RANGE.0, OMEGA_RANGE.1, res.line).values;
    let ks = GridSpec::linspace(K_RANGE_CASE1.0, K_RANGE_CASE1.1, res.line).values;
    let ws2 = GridSpec::linspace(OMEGA_RANGE.0, OMEGA_RANGE.1, res.surface).values;
    let ks2 = GridSpec::linspace(K_RANGE_CASE1.0, K_RANGE_CASE1.1, res.surface).values;
    let mut pts: Vec<(char, f64, f64)> = ks.iter().map(|&k| ('a', fig.omega_a, k)).collect();
    pts.extend(ws.iter().map(|&w| ('b', w, fig.k_b)));
    pts.extend(ws2.iter().flat_map(|&w| ks2.iter().map(move |&k| ('c', w, k))));
    pts.par_iter()
        .map(|&(panel, w, k)| {
            Ok(FigureRow { figure: id, panel, row: case1_point(fig.period, fig.b, w, k, fig.sign, false)? })
        })
        .collect()
}
