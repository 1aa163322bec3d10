//! Command-line driver: wave construction, Θ tables, spectra, stability
//! sweeps, `b*` thresholds and figure data. Every command is a pure function
//! of its flags and writes CSV or flat JSON.

pub mod error;
pub mod grid;
pub mod output;
pub mod reference;
pub mod sweeps;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cnoidal::hill::{inertia_of_l, spectrum, HillKind, HillOperator};
use cnoidal::stability::find_bstar;
use cnoidal::waves::{residual_system, residual_tolerance, BSign, Wave, WaveCase1, WaveCase2};
use cnoidal::periodic_grid;
use error::CliError;
use grid::{real_arg, GridSpec};
use output::{Record, Table};
use reference::TableId;
use sweeps::{modulus, FigureResolution};

#[derive(Debug, Parser)]
#[command(name = "cnoidal", version, about = "Cnoidal waves of the abcd Boussinesq system")]
pub struct RunConfig {
    /// Worker threads for parameter sweeps (default: all cores).
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: Option<u32>,
    /// Write output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a wave, check it against the ODE system and dump its constants.
    Wave(WaveArgs),
    /// Θ over the printed parameter grids with deviations from the reference values.
    ThetaTable(ThetaArgs),
    /// Periodic spectrum and inertia of a Hill operator or of the full operator.
    Spectrum(SpectrumArgs),
    /// (H2) verdicts over a parameter sweep.
    Stability(StabilityArgs),
    /// Threshold b* above which the first-family index is negative.
    Bstar(BstarArgs),
    /// Data behind figures 2-6.
    Figures(FigureArgs),
}

#[derive(Debug, Clone, Args)]
pub struct WaveParams {
    /// Wave family: 1 (a + b = 0) or 2 (a + b = 1/6).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub case: u8,
    /// Period L > 0 (accepts pi, 2pi).
    #[arg(long = "L", default_value = "1", value_parser = real_arg)]
    pub period: f64,
    /// Dispersion b > 0 (first family only).
    #[arg(long, default_value = "1", value_parser = real_arg)]
    pub b: f64,
    /// Wave speed, -1 < omega < 1 (first family only).
    #[arg(long, default_value = "0", value_parser = real_arg, allow_hyphen_values = true)]
    pub omega: f64,
    /// Elliptic modulus, 0 < k < 1/sqrt(2) (first family) or 0 < k < 1 (second).
    #[arg(long, default_value = "0.5", value_parser = real_arg)]
    pub k: f64,
    /// Sign of B: plus or minus.
    #[arg(long = "Bsign", default_value = "plus")]
    pub sign: BSign,
}

impl WaveParams {
    pub fn build(&self) -> Result<Wave<f64>, CliError> {
        let k = modulus(self.k)?;
        Ok(match self.case {
            1 => WaveCase1::build(self.period, self.b, self.omega, k, self.sign)?.into(),
            _ => WaveCase2::build(self.period, k, self.sign)?.into(),
        })
    }
}

#[derive(Debug, Args)]
pub struct WaveArgs {
    #[command(flatten)]
    pub wave: WaveParams,
    /// json: constants; csv: profile samples (x, phi).
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Profile sample count.
    #[arg(long, default_value_t = 256, value_parser = clap::value_parser!(u32).range(2..))]
    pub n: u32,
}

#[derive(Debug, Args)]
pub struct ThetaArgs {
    /// Table number 1-4; all tables when omitted.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub table: Option<u8>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OperatorArg {
    /// Full 2x2 operator, inertia by congruence.
    #[value(name = "L")]
    Full,
    L1,
    L2,
    L3,
    L4,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub wave: WaveParams,
    #[arg(long, value_enum, default_value_t = OperatorArg::Full)]
    pub operator: OperatorArg,
    /// Collocation points (even, >= 64).
    #[arg(long = "N", default_value_t = 128)]
    pub grid: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct StabilityArgs {
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub case: u8,
    #[arg(long = "L", default_value = "1", value_parser = real_arg)]
    pub period: f64,
    /// b grid: start:stop:n, a comma list or one value (first family).
    #[arg(long, default_value = "0.01")]
    pub b: GridSpec,
    /// omega grid (first family).
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub omega: GridSpec,
    /// k grid.
    #[arg(long, default_value = "0.3")]
    pub k: GridSpec,
    #[arg(long = "Bsign", default_value = "plus")]
    pub sign: BSign,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BstarArgs {
    #[arg(long = "L", default_value = "1", value_parser = real_arg)]
    pub period: f64,
    #[arg(long = "omega-grid", default_value = "-0.99:0.99:11", allow_hyphen_values = true)]
    pub omega_grid: GridSpec,
    #[arg(long = "k-grid", default_value = "0.01:0.7:8")]
    pub k_grid: GridSpec,
    #[arg(long = "Bsign", default_value = "plus")]
    pub sign: BSign,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// Figure number 2-6.
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=6))]
    pub id: u8,
    /// Periods for figure 6 (default 1, 2pi, 50, 100).
    #[arg(long = "L", value_delimiter = ',', value_parser = real_arg)]
    pub periods: Option<Vec<f64>>,
    /// Points along one-parameter panels.
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(2..))]
    pub n: u32,
    /// Points per axis of the surface panel.
    #[arg(long = "n-surface", default_value_t = 41, value_parser = clap::value_parser!(u32).range(2..))]
    pub n_surface: u32,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

/// Command output, rendered by the caller.
#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Table(Table, Format),
    Record(Record, Format),
    Text(String),
}

impl Output {
    pub fn render(&self) -> String {
        match self {
            Output::Table(t, Format::Csv) => t.to_csv(),
            Output::Table(t, Format::Json) => t.to_json(),
            Output::Record(r, Format::Json) => r.to_json(),
            Output::Record(r, Format::Csv) => r.to_csv(),
            Output::Text(s) => s.clone(),
        }
    }
}

/// Keys shared by wave dumps.
fn wave_record(w: &Wave<f64>) -> Record {
    let d = w.dispersion();
    let mut r = Record::default();
    r.push("case", w.case_number());
    r.push("L", w.period());
    r.push("b", d.b);
    r.push("a", d.a);
    r.push("omega", w.omega());
    r.push("k", w.modulus().k());
    r.push("Bsign", w.sign().as_str());
    r.push("B", w.big_b());
    r.push("b0", w.b0());
    r.push("b2", w.b2());
    r.push("A1", w.a1());
    r.push("A2", w.a2());
    r
}

pub fn cmd_wave(args: &WaveArgs) -> Result<Output, CliError> {
    let w = args.wave.build()?;
    let n = args.n as usize;
    let grid = periodic_grid(w.period(), n);
    let res = residual_system(&w, &grid);
    if !res.passes(residual_tolerance()) {
        return Err(CliError::Residual(format!("relative residual {:e}", res.relative())));
    }
    Ok(match args.format {
        Format::Json => {
            let mut r = wave_record(&w);
            r.push("residual", res.relative());
            Output::Record(r, Format::Json)
        }
        Format::Csv => {
            let prof = w.profile();
            let mut t = Table::new(vec!["x", "phi"]);
            for &x in &grid {
                t.push(vec![x.into(), prof.phi(x).into()]);
            }
            Output::Table(t, Format::Csv)
        }
    })
}

pub fn cmd_theta_table(args: &ThetaArgs) -> Result<Output, CliError> {
    let tables: Vec<TableId> = match args.table {
        Some(n) => vec![TableId::from_number(n).expect("clap range 1..=4")],
        None => TableId::ALL.to_vec(),
    };
    let rows = sweeps::theta_rows(&tables)?;
    let mut t = Table::new(vec!["table", "L", "b", "omega", "k", "Bsign", "theta", "reference", "rel_dev", "sign_match"]);
    for r in &rows {
        let e = r.entry;
        let b = match e.b {
            Some(b) => b,
            None => WaveCase2::build(e.period, modulus(e.k)?, e.sign)?.b(),
        };
        t.push(vec![
            e.table.number().into(),
            e.period.into(),
            b.into(),
            e.omega.into(),
            e.k.into(),
            e.sign.as_str().into(),
            r.theta.into(),
            e.theta.into(),
            r.rel_dev().into(),
            r.sign_match().into(),
        ]);
    }
    let bad = rows.iter().filter(|r| !r.sign_match()).count();
    if bad > 0 {
        // The table is still emitted so the disagreement can be inspected.
        eprint!("{}", Output::Table(t, args.format).render());
        return Err(CliError::ThetaSign(bad));
    }
    Ok(Output::Table(t, args.format))
}

pub fn cmd_spectrum(args: &SpectrumArgs) -> Result<Output, CliError> {
    let w = args.wave.build()?;
    let mut r = wave_record(&w);
    let kind = match args.operator {
        OperatorArg::Full => None,
        OperatorArg::L1 => Some(HillKind::L1),
        OperatorArg::L2 => Some(HillKind::L2),
        OperatorArg::L3 => Some(HillKind::L3),
        OperatorArg::L4 => Some(HillKind::L4),
    };
    r.push("N", args.grid);
    match kind {
        Some(kind) => {
            let op = HillOperator::for_wave(kind, &w)?;
            let s = spectrum(&op, args.grid)?;
            r.push("operator", kind.as_str());
            r.push("n", s.n_count);
            r.push("z", s.z_count);
            r.push("tol_zero", s.tol_zero);
            r.push("zero_mode_alignment", s.zero_mode_alignment);
            r.push("eigenvalues", s.eigenvalues);
            if matches!(kind, HillKind::L1 | HillKind::L3) {
                r.push("theta", sweeps::theta_of(&w)?);
            }
        }
        None => {
            let s = inertia_of_l(&w, args.grid)?;
            r.push("operator", "L");
            r.push("n", s.n);
            r.push("z", s.z);
            r.push("zero_mode_alignment", s.direct.zero_mode_alignment);
            r.push("eigenvalues", s.direct.eigenvalues.clone());
            for (i, part) in s.parts.iter().enumerate() {
                let (kn, kz, ke) = if i == 0 { ("n_first", "z_first", "first") } else { ("n_second", "z_second", "second") };
                r.push(ke, s.kinds[i].as_str());
                r.push(kn, part.n_count);
                r.push(kz, part.z_count);
            }
            r.push("theta", sweeps::theta_of(&w)?);
        }
    }
    Ok(Output::Record(r, args.format))
}

fn stability_table(rows: impl IntoIterator<Item = (Option<(u8, char)>, sweeps::StabilityRow)>, figure: bool) -> Table {
    let mut header = vec!["case", "L", "b", "omega", "k", "Bsign", "I_or_bound", "verdict"];
    if figure {
        header.splice(0..0, ["figure", "panel"]);
    }
    let mut t = Table::new(header);
    for (tag, s) in rows {
        let mut row = vec![
            s.case.into(),
            s.period.into(),
            s.b.into(),
            s.omega.into(),
            s.k.into(),
            s.sign.as_str().into(),
            s.value.into(),
            (if s.pass { "pass" } else { "fail" }).into(),
        ];
        if let Some((f, p)) = tag {
            row.splice(0..0, [f.into(), p.to_string().into()]);
        }
        t.push(row);
    }
    t
}

pub fn cmd_stability(args: &StabilityArgs) -> Result<Output, CliError> {
    let rows = sweeps::stability_sweep(args.case, args.period, &args.b, &args.omega, &args.k, args.sign)?;
    Ok(Output::Table(stability_table(rows.into_iter().map(|r| (None, r)), false), args.format))
}

pub fn cmd_bstar(args: &BstarArgs) -> Result<Output, CliError> {
    let ks = args.k_grid.values.iter().map(|&k| modulus(k)).collect::<Result<Vec<_>, _>>()?;
    let rep = find_bstar(args.period, &args.omega_grid.values, &ks, args.sign).map_err(|e| match CliError::from(e) {
        CliError::Stability(s) => CliError::Bstar(s),
        other => other,
    })?;
    let mut r = Record::default();
    r.push("L", rep.period);
    r.push("Bsign", args.sign.as_str());
    r.push("bstar", rep.bstar);
    r.push("bstar_over_L2", rep.bstar / (rep.period * rep.period));
    r.push("grid", format!("omega={};k={}", args.omega_grid.as_text(), args.k_grid.as_text()));
    r.push("omega_grid", args.omega_grid.values.clone());
    r.push("k_grid", args.k_grid.values.clone());
    r.push("per_point_thresholds", rep.per_point.iter().map(|p| p.threshold).collect::<Vec<_>>());
    Ok(Output::Record(r, args.format))
}

pub fn cmd_figures(args: &FigureArgs) -> Result<Output, CliError> {
    let res = FigureResolution { line: args.n as usize, surface: args.n_surface as usize };
    let rows = sweeps::figure_rows(args.id, args.periods.as_deref(), res)?;
    let t = stability_table(rows.into_iter().map(|f| (Some((f.figure, f.panel)), f.row)), true);
    Ok(Output::Table(t, args.format))
}

pub fn execute(cfg: &RunConfig) -> Result<Output, CliError> {
    match &cfg.command {
        Command::Wave(a) => cmd_wave(a),
        Command::ThetaTable(a) => cmd_theta_table(a),
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Stability(a) => cmd_stability(a),
        Command::Bstar(a) => cmd_bstar(a),
        Command::Figures(a) => cmd_figures(a),
    }
}

/// Parses, runs and writes; returns the process exit code.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    if let Some(n) = cfg.threads {
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global();
    }
    let result = execute(&cfg).and_then(|out| {
        let text = out.render();
        match &cfg.out {
            Some(p) => std::fs::write(p, text)?,
            None => print!("{text}"),
        }
        Ok(())
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
