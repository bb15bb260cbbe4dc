//! Command implementations for the `tribo-eis` binary.

use std::fmt;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use tribo_eis::calibration::{
    build_thickness_model_with, logspace, merge_datasets, model_response_family, FittedPoint,
    OperatingPoint, DEFAULT_BREAKDOWN_FACTOR,
};
use tribo_eis::contact::{BallOnDiscGeometry, HertzContact};
use tribo_eis::ehd::{material_conversion_factor, REDUCED_MODULUS_STEEL_GLASS, REDUCED_MODULUS_STEEL_STEEL};
use tribo_eis::fit::{classify_regime, fit_model, FitConfig, ModelKind, Weighting};
use tribo_eis::io::{self as tio, ContactConfig, FitReportRow, FitsTable, ReportedFit};
use tribo_eis::plot::{bode_svg, nyquist_svg, Series, Style};
use tribo_eis::{synth_spectrum, to_bode, to_nyquist, Error, FrequencyGrid, NoiseSpec, Spectrum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_EMPTY_JOIN: i32 = 3;
pub const EXIT_MODEL: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "tribo-eis", version, about = "Impedance-based lubricant film thickness toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Forward-simulate the ball-on-disc contact and write its spectrum.
    Simulate(SimulateArgs),
    /// Fit an equivalent circuit to one or more spectra.
    Fit(FitArgs),
    /// Bode table (and optional SVG) of a spectrum.
    Bode(PlotArgs),
    /// Nyquist table (and optional SVG) of a spectrum.
    Nyquist(PlotArgs),
    /// Join fits with interferometer thickness and build a thickness model.
    Calibrate(CalibrateArgs),
    /// Film thickness from a measured R and C.
    Thickness(ThicknessArgs),
    /// Spectra of the contact model over a range of film thicknesses.
    Family(FamilyArgs),
}

/// `lo,hi,points_per_decade`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub ppd: f64,
}

impl std::str::FromStr for GridSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let v: Vec<f64> = s
            .split(',')
            .map(|p| p.trim().parse::<f64>().map_err(|_| format!("`{p}` is not a number")))
            .collect::<Result<_, _>>()?;
        match v.as_slice() {
            &[lo, hi, ppd] => Ok(Self { lo, hi, ppd }),
            _ => Err("expected lo,hi,points_per_decade".into()),
        }
    }
}

impl GridSpec {
    fn build(&self) -> Result<FrequencyGrid, CliError> {
        FrequencyGrid::logarithmic(self.lo, self.hi, self.ppd).map_err(CliError::config)
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Contact configuration (`key = value` lines).
    pub config: PathBuf,
    /// Output spectrum CSV.
    pub output: PathBuf,
    #[arg(long, default_value = "1,1e6,10")]
    pub grid: GridSpec,
    /// Relative noise σ.
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Film thickness in nm.
    #[arg(long = "h-nm", default_value_t = 100.0)]
    pub h_nm: f64,
    /// Breakdown ratio; 0 means an intact film (open circuit).
    #[arg(long, default_value_t = 1e-5)]
    pub alpha: f64,
    /// Operating temperature recorded in the file header.
    #[arg(long = "temperature-c")]
    pub temperature_c: Option<f64>,
    /// Entrainment speed recorded in the file header.
    #[arg(long = "speed-mm-s")]
    pub speed_mm_s: Option<f64>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    /// Report CSV; stdout when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value = "rc")]
    pub model: ModelKind,
    #[arg(long, default_value = "modulus")]
    pub weighting: Weighting,
    /// Stationary contact resistance used for regime labels.
    #[arg(long, default_value_t = tribo_eis::contact::DEFAULT_STATIONARY_RESISTANCE)]
    pub r0: f64,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    pub input: PathBuf,
    /// Table CSV; stdout when omitted.
    pub output: Option<PathBuf>,
    /// Also write an SVG next to the table (or to `plot.svg` when writing to stdout).
    #[arg(long)]
    pub svg: bool,
}

#[derive(Debug, Args)]
pub struct CalibrateArgs {
    /// Fit report or a `temperature_c,speed_mm_s,load_n,r_ohm,c_farad` table.
    pub fits: PathBuf,
    /// Interferometer thickness table.
    pub utfi: PathBuf,
    /// Output model file.
    pub output: PathBuf,
    /// Steel/glass to steel/steel thickness factor; derived from the reduced moduli by default.
    #[arg(long)]
    pub factor: Option<f64>,
    #[arg(long, default_value_t = tribo_eis::contact::DEFAULT_STATIONARY_RESISTANCE)]
    pub r0: f64,
    /// Breakdown threshold; 10·R0 when omitted.
    #[arg(long = "threshold-ohm")]
    pub threshold_ohm: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ThicknessArgs {
    pub model: PathBuf,
    #[arg(long = "r", allow_negative_numbers = true)]
    pub r_ohm: f64,
    #[arg(long = "c", allow_negative_numbers = true)]
    pub c_farad: f64,
    /// Override the breakdown threshold stored in the model.
    #[arg(long = "threshold-ohm")]
    pub threshold_ohm: Option<f64>,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    pub model: PathBuf,
    pub config: PathBuf,
    /// Directory receiving one spectrum CSV per thickness.
    pub out_dir: PathBuf,
    #[arg(long, default_value_t = 1e-5)]
    pub alpha: f64,
    #[arg(long = "h-min-nm", default_value_t = 0.1)]
    pub h_min_nm: f64,
    #[arg(long = "h-max-nm", default_value_t = 1000.0)]
    pub h_max_nm: f64,
    #[arg(long, default_value_t = 5)]
    pub count: usize,
    #[arg(long, default_value = "1,1e6,10")]
    pub grid: GridSpec,
    /// Also write a Bode overlay `family.svg`.
    #[arg(long)]
    pub svg: bool,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn new(code: i32, message: impl fmt::Display) -> Self {
        Self { code, message: message.to_string() }
    }
    fn input(e: impl fmt::Display) -> Self {
        Self::new(EXIT_INPUT, e)
    }
    fn config(e: impl fmt::Display) -> Self {
        Self::new(EXIT_CONFIG, e)
    }
    fn model(e: impl fmt::Display) -> Self {
        Self::new(EXIT_MODEL, e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn at(path: &Path) -> impl Fn(Error) -> String + '_ {
    move |e| format!("{}: {e}", path.display())
}

/// Runs a parsed command. Diagnostics go to `err`.
pub fn run(cli: Cli, err: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate(a) => cmd_simulate(&a),
        Command::Fit(a) => cmd_fit(&a, err),
        Command::Bode(a) => cmd_plot(&a, true),
        Command::Nyquist(a) => cmd_plot(&a, false),
        Command::Calibrate(a) => cmd_calibrate(&a, err),
        Command::Thickness(a) => cmd_thickness(&a, &mut io::stdout().lock()),
        Command::Family(a) => cmd_family(&a, &mut io::stdout().lock()),
    }
}

/// Parses `args` and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let stderr = io::stderr();
    let mut err = stderr.lock();
    match run(cli, &mut err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code
        }
    }
}

fn load_config(path: &Path) -> Result<ContactConfig, CliError> {
    tio::read_contact_config(path).map_err(|e| CliError::config(at(path)(e)))
}

fn geometry_from(cfg: &ContactConfig) -> Result<BallOnDiscGeometry, CliError> {
    let hertz = HertzContact::new(cfg.load_n, cfg.ball_radius_m, cfg.reduced_modulus_pa)
        .map_err(CliError::config)?;
    BallOnDiscGeometry::from_hertz(&hertz, cfg.ball_radius_m, cfg.epsilon_r, cfg.r0_ohm)
        .map_err(CliError::config)
}

fn write_with(path: &Path, f: impl FnOnce(BufWriter<File>) -> tribo_eis::Result<()>) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    f(BufWriter::new(file)).map_err(|e| CliError::input(at(path)(e)))
}

pub fn cmd_simulate(a: &SimulateArgs) -> Result<(), CliError> {
    let cfg = load_config(&a.config)?;
    let geometry = geometry_from(&cfg)?;
    let grid = a.grid.build()?;
    let noise = NoiseSpec::new(a.noise).map_err(CliError::config)?;
    let net = geometry
        .with_film(a.h_nm * 1e-9, a.alpha)
        .and_then(|m| m.network())
        .map_err(CliError::model)?;
    let mut spectrum = synth_spectrum(&net, &grid, noise, a.seed).map_err(CliError::model)?;
    if let (Some(t), Some(u)) = (a.temperature_c, a.speed_mm_s) {
        spectrum.meta = Some(OperatingPoint::new(t, u, cfg.load_n).map_err(CliError::config)?);
    }
    write_with(&a.output, |w| tio::write_spectrum(w, &spectrum))
}

fn fit_one(path: &Path, a: &FitArgs) -> Result<ReportedFit, String> {
    let s = tio::read_spectrum_file(path).map_err(at(path))?;
    let cfg = FitConfig { weighting: a.weighting, ..FitConfig::default() };
    let fit = fit_model(&s, a.model, &cfg).map_err(at(path))?;
    Ok(ReportedFit::from_fit(&fit, classify_regime(&fit, a.r0).to_string()))
}

pub fn cmd_fit(a: &FitArgs, err: &mut dyn Write) -> Result<(), CliError> {
    // Indexed parallel collect keeps input order.
    let results: Vec<Result<ReportedFit, String>> = a.inputs.par_iter().map(|p| fit_one(p, a)).collect();
    let mut rows = Vec::with_capacity(results.len());
    let mut failures = 0;
    for (path, r) in a.inputs.iter().zip(results) {
        let fit = match r {
            Ok(f) => Some(f),
            Err(msg) => {
                failures += 1;
                let _ = writeln!(err, "warning: {msg}");
                None
            }
        };
        rows.push(FitReportRow { file: path.display().to_string(), model: a.model, fit });
    }
    match &a.output {
        Some(p) => write_with(p, |w| tio::write_fit_report(w, &rows))?,
        None => tio::write_fit_report(io::stdout().lock(), &rows).map_err(CliError::input)?,
    }
    if failures == rows.len() {
        return Err(CliError::input("no input could be fitted"));
    }
    Ok(())
}

pub fn cmd_plot(a: &PlotArgs, bode: bool) -> Result<(), CliError> {
    let s = tio::read_spectrum_file(&a.input).map_err(|e| CliError::input(at(&a.input)(e)))?;
    let write_table = |w: &mut dyn Write| -> tribo_eis::Result<()> {
        if bode {
            tio::write_bode(w, &to_bode(&s))
        } else {
            tio::write_nyquist(w, &to_nyquist(&s))
        }
    };
    match &a.output {
        Some(p) => write_with(p, |mut w| write_table(&mut w))?,
        None => write_table(&mut io::stdout().lock()).map_err(CliError::input)?,
    }
    if a.svg {
        let svg_path = a
            .output
            .as_ref()
            .map(|p| p.with_extension("svg"))
            .unwrap_or_else(|| PathBuf::from("plot.svg"));
        let label = a.input.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        let series = [Series { label: &label, spectrum: &s, style: Style::Markers }];
        let svg = if bode { bode_svg(&series) } else { nyquist_svg(&series) };
        fs::write(&svg_path, svg).map_err(|e| CliError::input(format!("{}: {e}", svg_path.display())))?;
    }
    Ok(())
}

/// Fitted points from a fit report: operating points come from the spectrum files it names.
fn points_from_report(report: &Path, rows: &[FitReportRow], err: &mut dyn Write) -> Vec<FittedPoint> {
    let base = report.parent().unwrap_or(Path::new("."));
    let mut out = Vec::new();
    for row in rows {
        let Some(fit) = &row.fit else { continue };
        let path = Path::new(&row.file);
        let path = if path.is_relative() && !path.exists() { base.join(path) } else { path.to_path_buf() };
        match tio::read_spectrum_file(&path) {
            Ok(Spectrum { meta: Some(op), .. }) => out.push(FittedPoint { op, r_ohm: fit.r1_ohm, c_farad: fit.c1_farad }),
            Ok(_) => {
                let _ = writeln!(err, "warning: {}: no operating point in header, skipped", path.display());
            }
            Err(e) => {
                let _ = writeln!(err, "warning: {}: {e}, skipped", path.display());
            }
        }
    }
    out
}

pub fn cmd_calibrate(a: &CalibrateArgs, err: &mut dyn Write) -> Result<(), CliError> {
    let fits = match tio::read_fits_table(&a.fits).map_err(|e| CliError::input(at(&a.fits)(e)))? {
        FitsTable::Points(p) => p,
        FitsTable::Report(rows) => points_from_report(&a.fits, &rows, err),
    };
    let utfi = File::open(&a.utfi)
        .map_err(Error::from)
        .and_then(tio::read_utfi)
        .map_err(|e| CliError::input(at(&a.utfi)(e)))?;
    let factor = match a.factor {
        Some(f) => f,
        None => material_conversion_factor(REDUCED_MODULUS_STEEL_STEEL, REDUCED_MODULUS_STEEL_GLASS)
            .map_err(CliError::config)?,
    };
    let merged = merge_datasets(&fits, &utfi, factor).map_err(CliError::input)?;
    let _ = writeln!(
        err,
        "matched {}, unmatched fits {}, unmatched interferometer rows {}",
        merged.records.len(),
        merged.unmatched_fits.len(),
        merged.unmatched_utfi.len()
    );
    if merged.records.is_empty() {
        return Err(CliError::new(EXIT_EMPTY_JOIN, "no joinable operating points"));
    }
    let breakdown_factor = match a.threshold_ohm {
        Some(t) => t / a.r0,
        None => DEFAULT_BREAKDOWN_FACTOR,
    };
    let model = build_thickness_model_with(&merged.records, a.r0, breakdown_factor).map_err(|e| match e {
        Error::NonMonotone(list) => CliError::model(format!("non-monotone calibration:\n  {}", list.join("\n  "))),
        other => CliError::model(other),
    })?;
    let _ = writeln!(err, "model knots {}", model.knots().len());
    write_with(&a.output, |w| tio::write_thickness_model(w, &model))
}

pub fn cmd_thickness(a: &ThicknessArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let mut model = tio::read_thickness_model_file(&a.model).map_err(|e| CliError::input(at(&a.model)(e)))?;
    if let Some(t) = a.threshold_ohm {
        model = model.with_threshold(t).map_err(CliError::config)?;
    }
    let est = model.thickness_from_rc(a.r_ohm, a.c_farad);
    writeln!(out, "{},{},{}", tio::fmt_f64(est.h_m * 1e9), est.regime, est.extrapolated).map_err(CliError::input)
}

pub fn cmd_family(a: &FamilyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let model = tio::read_thickness_model_file(&a.model).map_err(|e| CliError::input(at(&a.model)(e)))?;
    let cfg = load_config(&a.config)?;
    let geometry = geometry_from(&cfg)?;
    let grid = a.grid.build()?;
    if !(a.h_min_nm > 0.0 && a.h_max_nm >= a.h_min_nm) {
        return Err(CliError::config("need 0 < h-min-nm <= h-max-nm"));
    }
    fs::create_dir_all(&a.out_dir).map_err(|e| CliError::input(format!("{}: {e}", a.out_dir.display())))?;
    let hs = logspace(a.h_min_nm * 1e-9, a.h_max_nm * 1e-9, a.count);
    let family = model_response_family(&model, &geometry, a.alpha, &hs, &grid);

    let w = |e: io::Error| CliError::input(e);
    writeln!(out, "h_nm,within_calibration,file").map_err(w)?;
    let mut written = Vec::new();
    for (i, m) in family.iter().enumerate() {
        match &m.spectrum {
            Ok(s) => {
                let path = a.out_dir.join(format!("family_{i:02}.csv"));
                write_with(&path, |f| tio::write_spectrum(f, s))?;
                writeln!(out, "{},{},{}", tio::fmt_f64(m.h_m * 1e9), m.within_calibration, path.display()).map_err(w)?;
                written.push((format!("{:.3} nm", m.h_m * 1e9), s));
            }
            Err(e) => writeln!(out, "{},{},error: {e}", tio::fmt_f64(m.h_m * 1e9), m.within_calibration).map_err(w)?,
        }
    }
    if a.svg && !written.is_empty() {
        let series: Vec<Series> = written
            .iter()
            .map(|(label, s)| Series { label, spectrum: s, style: Style::Line })
            .collect();
        let path = a.out_dir.join("family.svg");
        fs::write(&path, bode_svg(&series)).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}
