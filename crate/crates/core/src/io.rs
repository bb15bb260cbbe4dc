//! Text file formats: spectra, calibration tables, fit reports, thickness models
//! and the contact configuration.
//!
//! Floating-point values are written with 17 significant digits so every
//! format round-trips exactly.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::calibration::{CalibrationRecord, FittedPoint, OperatingPoint, ThicknessModel};
use crate::circuit::{BodePoint, NyquistPoint, Sample, Spectrum};
use crate::error::{Error, Result};
use crate::fit::{FitResult, ModelKind};

pub const SPECTRUM_HEADER: &str = "freq_hz,z_real_ohm,z_imag_ohm";
pub const SPECTRUM_POLAR_HEADER: &str = "freq_hz,z_mag_ohm,z_phase_deg";
pub const BODE_HEADER: &str = "freq_hz,z_mag_ohm,z_phase_deg";
pub const NYQUIST_HEADER: &str = "z_real_ohm,neg_z_imag_ohm";
pub const CALIBRATION_HEADER: &str = "temperature_c,speed_mm_s,load_n,r_ohm,c_farad,h_nm";
pub const FITTED_POINTS_HEADER: &str = "temperature_c,speed_mm_s,load_n,r_ohm,c_farad";
pub const UTFI_HEADER: &str = "temperature_c,speed_mm_s,load_n,h_nm";
pub const FIT_REPORT_HEADER: &str =
    "file,model,r1_ohm,c1_farad,r2_ohm,aw,residual_norm,iterations,converged,regime";
pub const MODEL_MAGIC: &str = "eis-thickness-model v1";
pub const MODEL_KNOT_HEADER: &str = "log10_c_farad,log10_h_m";
const THRESHOLD_KEY: &str = "breakdown_r_threshold_ohm";

/// Full-precision float formatting.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// `v` in units of `10^-shift`, written by moving the decimal exponent so no
/// binary rounding happens (e.g. meters to nanometers with `shift = 9`).
fn fmt_scaled(v: f64, shift: i32) -> String {
    let s = fmt_f64(v);
    match s.split_once('e') {
        Some((m, e)) if v.is_finite() => format!("{m}e{}", e.parse::<i32>().unwrap() + shift),
        _ => s,
    }
}

/// Inverse of [`fmt_scaled`]: the exponent shift is applied to the decimal text before parsing.
fn parse_scaled(field: &str, shift: i32, line: usize, column: &str) -> Result<f64> {
    let t = field.trim();
    let shifted = match t.find(['e', 'E']) {
        Some(i) => match t[i + 1..].parse::<i32>() {
            Ok(e) => format!("{}e{}", &t[..i], e - shift),
            Err(_) => t.to_owned(),
        },
        None => format!("{t}e{}", -shift),
    };
    parse_f64(&shifted, line, column).map_err(|_| Error::Parse {
        line,
        message: format!("column `{column}`: `{field}` is not a number"),
    })
}

fn parse_f64(field: &str, line: usize, column: &str) -> Result<f64> {
    field.trim().parse::<f64>().map_err(|_| Error::Parse {
        line,
        message: format!("column `{column}`: `{field}` is not a number"),
    })
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn read_to_string(path: &Path) -> Result<String> {
    let mut s = String::new();
    File::open(path)?.read_to_string(&mut s)?;
    Ok(s)
}

/// Parsed CSV: header plus (1-based line number, fields) rows. `#` lines are skipped.
struct Table {
    header: Vec<String>,
    rows: Vec<(usize, Vec<String>)>,
}

impl Table {
    fn parse(text: &str) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .flexible(false)
            .from_reader(text.as_bytes());
        let header = rdr
            .headers()
            .map_err(csv_err)?
            .iter()
            .map(str::to_owned)
            .collect::<Vec<_>>();
        if header.iter().all(|h| h.is_empty()) {
            return Err(Error::Parse {
                line: 1,
                message: "missing header".into(),
            });
        }
        let mut rows = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(csv_err)?;
            let line = rec.position().map(|p| p.line() as usize).unwrap_or(0);
            rows.push((line, rec.iter().map(str::to_owned).collect()));
        }
        Ok(Self { header, rows })
    }

    fn header_is(&self, expected: &str) -> bool {
        self.header.join(",") == expected
    }

    fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    fn require(&self, names: &[&'static str]) -> Result<Vec<usize>> {
        names
            .iter()
            .map(|n| {
                self.column(n).ok_or_else(|| Error::Parse {
                    line: 1,
                    message: format!("header lacks column `{n}` (got `{}`)", self.header.join(",")),
                })
            })
            .collect()
    }
}

fn csv_err(e: csv::Error) -> Error {
    let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
    Error::Parse {
        line,
        message: e.to_string(),
    }
}

// ---------------------------------------------------------------------------
// Spectra

pub fn write_spectrum<W: Write>(mut w: W, s: &Spectrum) -> Result<()> {
    if let Some(op) = &s.meta {
        writeln!(
            w,
            "# temperature_c={},speed_mm_s={},load_n={}",
            fmt_f64(op.temperature_c),
            fmt_f64(op.speed_mm_s),
            fmt_f64(op.load_n)
        )?;
    }
    if let Some(a) = s.amplitude_mv {
        writeln!(w, "# amplitude_mv={}", fmt_f64(a))?;
    }
    writeln!(w, "{SPECTRUM_HEADER}")?;
    for x in s.samples() {
        writeln!(w, "{},{},{}", fmt_f64(x.freq_hz), fmt_f64(x.z.re), fmt_f64(x.z.im))?;
    }
    w.flush()?;
    Ok(())
}

/// Reads rectangular (`z_real_ohm,z_imag_ohm`) or polar (`z_mag_ohm,z_phase_deg`) spectra.
pub fn read_spectrum<R: Read>(mut r: R) -> Result<Spectrum> {
    let mut text = String::new();
    r.read_to_string(&mut text)?;
    let meta = parse_metadata(&text)?;
    let table = Table::parse(&text)?;
    let polar = if table.header_is(SPECTRUM_HEADER) {
        false
    } else if table.header_is(SPECTRUM_POLAR_HEADER) {
        true
    } else {
        return Err(Error::Parse {
            line: 1,
            message: format!(
                "expected header `{SPECTRUM_HEADER}` or `{SPECTRUM_POLAR_HEADER}`, got `{}`",
                table.header.join(",")
            ),
        });
    };
    let cols: [&str; 3] = if polar {
        ["freq_hz", "z_mag_ohm", "z_phase_deg"]
    } else {
        ["freq_hz", "z_real_ohm", "z_imag_ohm"]
    };
    let samples = table
        .rows
        .iter()
        .map(|(line, f)| {
            let a = parse_f64(&f[0], *line, cols[0])?;
            let b = parse_f64(&f[1], *line, cols[1])?;
            let c = parse_f64(&f[2], *line, cols[2])?;
            let z = if polar {
                Complex64::from_polar(b, c.to_radians())
            } else {
                Complex64::new(b, c)
            };
            Ok(Sample::new(a, z))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut s = Spectrum::new(samples)?;
    s.meta = meta.op;
    s.amplitude_mv = meta.amplitude_mv;
    Ok(s)
}

#[derive(Default)]
struct Metadata {
    op: Option<OperatingPoint>,
    amplitude_mv: Option<f64>,
}

fn parse_metadata(text: &str) -> Result<Metadata> {
    let mut kv = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let Some(rest) = line.trim_start().strip_prefix('#') else {
            continue;
        };
        for part in rest.split(',') {
            if let Some((k, v)) = part.split_once('=') {
                kv.insert(k.trim().to_owned(), (i + 1, v.trim().to_owned()));
            }
        }
    }
    let get = |k: &str| -> Result<Option<f64>> {
        kv.get(k)
            .map(|(line, v)| parse_f64(v, *line, k))
            .transpose()
    };
    let op = match (get("temperature_c")?, get("speed_mm_s")?, get("load_n")?) {
        (Some(t), Some(u), Some(w)) => Some(OperatingPoint::new(t, u, w)?),
        _ => None,
    };
    Ok(Metadata {
        op,
        amplitude_mv: get("amplitude_mv")?,
    })
}

pub fn read_spectrum_file(path: &Path) -> Result<Spectrum> {
    read_spectrum(File::open(path)?)
}

pub fn write_spectrum_file(path: &Path, s: &Spectrum) -> Result<()> {
    write_spectrum(create(path)?, s)
}

pub fn write_bode<W: Write>(mut w: W, points: &[BodePoint]) -> Result<()> {
    writeln!(w, "{BODE_HEADER}")?;
    for p in points {
        writeln!(
            w,
            "{},{},{}",
            fmt_f64(p.freq_hz),
            fmt_f64(p.magnitude_ohm),
            fmt_f64(p.phase_deg)
        )?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_nyquist<W: Write>(mut w: W, points: &[NyquistPoint]) -> Result<()> {
    writeln!(w, "{NYQUIST_HEADER}")?;
    for p in points {
        writeln!(w, "{},{}", fmt_f64(p.real_ohm), fmt_f64(p.neg_imag_ohm))?;
    }
    w.flush()?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Calibration tables

pub fn write_calibration<W: Write>(mut w: W, records: &[CalibrationRecord]) -> Result<()> {
    writeln!(w, "{CALIBRATION_HEADER}")?;
    for r in records {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            fmt_f64(r.op.temperature_c),
            fmt_f64(r.op.speed_mm_s),
            fmt_f64(r.op.load_n),
            fmt_f64(r.r_ohm),
            fmt_f64(r.c_farad),
            fmt_scaled(r.h_m, 9)
        )?;
    }
    w.flush()?;
    Ok(())
}

fn parse_op(f: &[String], idx: &[usize], line: usize) -> Result<OperatingPoint> {
    OperatingPoint::new(
        parse_f64(&f[idx[0]], line, "temperature_c")?,
        parse_f64(&f[idx[1]], line, "speed_mm_s")?,
        parse_f64(&f[idx[2]], line, "load_n")?,
    )
}

pub fn read_calibration<R: Read>(mut r: R) -> Result<Vec<CalibrationRecord>> {
    let mut text = String::new();
    r.read_to_string(&mut text)?;
    let t = Table::parse(&text)?;
    let idx = t.require(&["temperature_c", "speed_mm_s", "load_n", "r_ohm", "c_farad", "h_nm"])?;
    t.rows
        .iter()
        .map(|(line, f)| {
            Ok(CalibrationRecord {
                op: parse_op(f, &idx, *line)?,
                r_ohm: parse_f64(&f[idx[3]], *line, "r_ohm")?,
                c_farad: parse_f64(&f[idx[4]], *line, "c_farad")?,
                h_m: parse_scaled(&f[idx[5]], 9, *line, "h_nm")?,
            })
        })
        .collect()
}

/// Reads `temperature_c,speed_mm_s,load_n,r_ohm,c_farad` (extra columns ignored).
pub fn read_fitted_points<R: Read>(mut r: R) -> Result<Vec<FittedPoint>> {
    let mut text = String::new();
    r.read_to_string(&mut text)?;
    fitted_points_from_table(&Table::parse(&text)?)
}

fn fitted_points_from_table(t: &Table) -> Result<Vec<FittedPoint>> {
    let idx = t.require(&["temperature_c", "speed_mm_s", "load_n", "r_ohm", "c_farad"])?;
    t.rows
        .iter()
        .map(|(line, f)| {
            Ok(FittedPoint {
                op: parse_op(f, &idx, *line)?,
                r_ohm: parse_f64(&f[idx[3]], *line, "r_ohm")?,
                c_farad: parse_f64(&f[idx[4]], *line, "c_farad")?,
            })
        })
        .collect()
}

pub fn write_fitted_points<W: Write>(mut w: W, points: &[FittedPoint]) -> Result<()> {
    writeln!(w, "{FITTED_POINTS_HEADER}")?;
    for p in points {
        writeln!(
            w,
            "{},{},{},{},{}",
            fmt_f64(p.op.temperature_c),
            fmt_f64(p.op.speed_mm_s),
            fmt_f64(p.op.load_n),
            fmt_f64(p.r_ohm),
            fmt_f64(p.c_farad)
        )?;
    }
    w.flush()?;
    Ok(())
}

/// Interferometer film thickness: `temperature_c,speed_mm_s,load_n,h_nm`. Returns meters.
pub fn read_utfi<R: Read>(mut r: R) -> Result<Vec<(OperatingPoint, f64)>> {
    let mut text = String::new();
    r.read_to_string(&mut text)?;
    let t = Table::parse(&text)?;
    let idx = t.require(&["temperature_c", "speed_mm_s", "load_n", "h_nm"])?;
    t.rows
        .iter()
        .map(|(line, f)| {
            Ok((
                parse_op(f, &idx, *line)?,
                parse_scaled(&f[idx[3]], 9, *line, "h_nm")?,
            ))
        })
        .collect()
}

pub fn write_utfi<W: Write>(mut w: W, rows: &[(OperatingPoint, f64)]) -> Result<()> {
    writeln!(w, "{UTFI_HEADER}")?;
    for (op, h) in rows {
        writeln!(
            w,
            "{},{},{},{}",
            fmt_f64(op.temperature_c),
            fmt_f64(op.speed_mm_s),
            fmt_f64(op.load_n),
            fmt_scaled(*h, 9)
        )?;
    }
    w.flush()?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Fit report

#[derive(Debug, Clone, PartialEq)]
pub struct FitReportRow {
    pub file: String,
    pub model: ModelKind,
    /// `None` for rows recording a failed input.
    pub fit: Option<ReportedFit>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportedFit {
    pub r1_ohm: f64,
    pub c1_farad: f64,
    pub r2_ohm: Option<f64>,
    pub aw: Option<f64>,
    pub residual_norm: f64,
    pub iterations: usize,
    pub converged: bool,
    pub regime: String,
}

impl ReportedFit {
    pub fn from_fit(fit: &FitResult, regime: impl Into<String>) -> Self {
        Self {
            r1_ohm: fit.params.r1_ohm,
            c1_farad: fit.params.c1_farad,
            r2_ohm: fit.params.r2_ohm,
            aw: fit.params.aw,
            residual_norm: fit.residual_norm,
            iterations: fit.iterations,
            converged: fit.converged,
            regime: regime.into(),
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

pub fn write_fit_report<W: Write>(mut w: W, rows: &[FitReportRow]) -> Result<()> {
    writeln!(w, "{FIT_REPORT_HEADER}")?;
    let opt = |v: Option<f64>| v.map(fmt_f64).unwrap_or_default();
    for row in rows {
        match &row.fit {
            Some(f) => writeln!(
                w,
                "{},{},{},{},{},{},{},{},{},{}",
                csv_field(&row.file),
                row.model,
                fmt_f64(f.r1_ohm),
                fmt_f64(f.c1_farad),
                opt(f.r2_ohm),
                opt(f.aw),
                fmt_f64(f.residual_norm),
                f.iterations,
                f.converged,
                f.regime
            )?,
            None => writeln!(w, "{},{},,,,,,,false,error", csv_field(&row.file), row.model)?,
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_fit_report<R: Read>(mut r: R) -> Result<Vec<FitReportRow>> {
    let mut text = String::new();
    r.read_to_string(&mut text)?;
    let t = Table::parse(&text)?;
    if !t.header_is(FIT_REPORT_HEADER) {
        return Err(Error::Parse {
            line: 1,
            message: format!("expected header `{FIT_REPORT_HEADER}`"),
        });
    }
    fit_report_from_table(&t)
}

fn fit_report_from_table(t: &Table) -> Result<Vec<FitReportRow>> {
    t.rows
        .iter()
        .map(|(line, f)| {
            let line = *line;
            let model = f[1].parse::<ModelKind>().map_err(|message| Error::Parse { line, message })?;
            let fit = if f[9] == "error" {
                None
            } else {
                let opt = |s: &str, col| {
                    if s.is_empty() {
                        Ok(None)
                    } else {
                        parse_f64(s, line, col).map(Some)
                    }
                };
                Some(ReportedFit {
                    r1_ohm: parse_f64(&f[2], line, "r1_ohm")?,
                    c1_farad: parse_f64(&f[3], line, "c1_farad")?,
                    r2_ohm: opt(&f[4], "r2_ohm")?,
                    aw: opt(&f[5], "aw")?,
                    residual_norm: parse_f64(&f[6], line, "residual_norm")?,
                    iterations: f[7].parse().map_err(|_| Error::Parse {
                        line,
                        message: format!("column `iterations`: `{}` is not an integer", f[7]),
                    })?,
                    converged: f[8].parse().map_err(|_| Error::Parse {
                        line,
                        message: format!("column `converged`: `{}` is not a boolean", f[8]),
                    })?,
                    regime: f[9].clone(),
                })
            };
            Ok(FitReportRow {
                file: f[0].clone(),
                model,
                fit,
            })
        })
        .collect()
}

/// Input table for calibration: a fit report or a table of fitted points.
#[derive(Debug, Clone, PartialEq)]
pub enum FitsTable {
    Report(Vec<FitReportRow>),
    Points(Vec<FittedPoint>),
}

pub fn read_fits_table(path: &Path) -> Result<FitsTable> {
    let text = read_to_string(path)?;
    let t = Table::parse(&text)?;
    if t.header_is(FIT_REPORT_HEADER) {
        fit_report_from_table(&t).map(FitsTable::Report)
    } else {
        fitted_points_from_table(&t).map(FitsTable::Points)
    }
}

// ---------------------------------------------------------------------------
// Thickness model file

pub fn write_thickness_model<W: Write>(mut w: W, m: &ThicknessModel) -> Result<()> {
    writeln!(w, "{MODEL_MAGIC}")?;
    writeln!(w, "{THRESHOLD_KEY}={}", fmt_f64(m.breakdown_r_threshold_ohm()))?;
    writeln!(w, "{MODEL_KNOT_HEADER}")?;
    for (c, h) in m.knots() {
        writeln!(w, "{},{}", fmt_f64(*c), fmt_f64(*h))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_thickness_model<R: Read>(mut r: R) -> Result<ThicknessModel> {
    let mut text = String::new();
    r.read_to_string(&mut text)?;
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let bad = |line, message: String| Error::Parse { line, message };

    match lines.next() {
        Some((_, MODEL_MAGIC)) => {}
        Some((n, other)) => return Err(bad(n, format!("expected `{MODEL_MAGIC}`, got `{other}`"))),
        None => return Err(bad(1, "empty model file".into())),
    }
    let threshold = match lines.next() {
        Some((n, l)) => match l.split_once('=') {
            Some((k, v)) if k.trim() == THRESHOLD_KEY => parse_f64(v, n, THRESHOLD_KEY)?,
            _ => return Err(bad(n, format!("expected `{THRESHOLD_KEY}=<ohms>`"))),
        },
        None => return Err(bad(2, "missing threshold line".into())),
    };
    match lines.next() {
        Some((_, MODEL_KNOT_HEADER)) => {}
        Some((n, other)) => {
            return Err(bad(n, format!("expected `{MODEL_KNOT_HEADER}`, got `{other}`")))
        }
        None => return Err(bad(3, "missing knot header".into())),
    }
    let mut knots = Vec::new();
    for (n, l) in lines {
        if l.is_empty() {
            continue;
        }
        let (c, h) = l
            .split_once(',')
            .ok_or_else(|| bad(n, format!("expected `log10_c,log10_h`, got `{l}`")))?;
        knots.push((parse_f64(c, n, "log10_c_farad")?, parse_f64(h, n, "log10_h_m")?));
    }
    ThicknessModel::from_knots(knots, threshold)
}

pub fn write_thickness_model_file(path: &Path, m: &ThicknessModel) -> Result<()> {
    write_thickness_model(create(path)?, m)
}

pub fn read_thickness_model_file(path: &Path) -> Result<ThicknessModel> {
    read_thickness_model(File::open(path)?)
}

// ---------------------------------------------------------------------------
// Contact configuration

/// Geometry and material inputs for the ball-on-disc contact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactConfig {
    pub ball_radius_m: f64,
    pub load_n: f64,
    pub reduced_modulus_pa: f64,
    pub epsilon_r: f64,
    pub r0_ohm: f64,
}

pub const CONFIG_KEYS: [&str; 5] = ["ball_radius_m", "load_n", "reduced_modulus_pa", "epsilon_r", "r0_ohm"];

/// Parses `key = value` lines; `#` starts a comment. Unknown or repeated keys are errors.
pub fn parse_contact_config(text: &str) -> Result<ContactConfig> {
    let mut values: BTreeMap<&str, f64> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: line_no,
            message: format!("expected `key = value`, got `{line}`"),
        })?;
        let key = k.trim();
        let Some(&known) = CONFIG_KEYS.iter().find(|&&c| c == key) else {
            return Err(Error::UnknownKey(key.to_owned()));
        };
        if values.insert(known, parse_f64(v, line_no, known)?).is_some() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("duplicate key `{key}`"),
            });
        }
    }
    let get = |k: &'static str| values.get(k).copied().ok_or_else(|| Error::MissingKey(k.to_owned()));
    Ok(ContactConfig {
        ball_radius_m: get("ball_radius_m")?,
        load_n: get("load_n")?,
        reduced_modulus_pa: get("reduced_modulus_pa")?,
        epsilon_r: get("epsilon_r")?,
        r0_ohm: get("r0_ohm")?,
    })
}

pub fn read_contact_config(path: &Path) -> Result<ContactConfig> {
    parse_contact_config(&read_to_string(path)?)
}

pub fn write_contact_config<W: Write>(mut w: W, c: &ContactConfig) -> Result<()> {
    writeln!(w, "ball_radius_m = {}", fmt_f64(c.ball_radius_m))?;
    writeln!(w, "load_n = {}", fmt_f64(c.load_n))?;
    writeln!(w, "reduced_modulus_pa = {}", fmt_f64(c.reduced_modulus_pa))?;
    writeln!(w, "epsilon_r = {}", fmt_f64(c.epsilon_r))?;
    writeln!(w, "r0_ohm = {}", fmt_f64(c.r0_ohm))?;
    w.flush()?;
    Ok(())
}
