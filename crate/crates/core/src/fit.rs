//! Complex nonlinear least-squares identification of RC-type equivalent circuits.
//!
//! Parameters are optimized in log space, which keeps every fitted value
//! positive without bound constraints. The objective is
//! `Σ w_i |Z_model(ω_i; θ) - Z_i|²` with real and imaginary parts weighted
//! separately (see [`Weighting`]), minimized by Levenberg–Marquardt with
//! Marquardt diagonal scaling.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::circuit::{phase_degrees, CircuitNetwork, Sample, Spectrum};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    /// R1 ∥ C1.
    ParallelRc,
    /// (R1 ∥ C1) + R2.
    ParallelRcSeriesR,
    /// C1 ∥ (R1 + Warburg).
    ParallelRcWarburg,
}

impl ModelKind {
    pub fn param_count(self) -> usize {
        match self {
            ModelKind::ParallelRc => 2,
            ModelKind::ParallelRcSeriesR | ModelKind::ParallelRcWarburg => 3,
        }
    }

    /// Short name used on the command line and in reports.
    pub fn label(self) -> &'static str {
        match self {
            ModelKind::ParallelRc => "rc",
            ModelKind::ParallelRcSeriesR => "rc+r",
            ModelKind::ParallelRcWarburg => "rc+w",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "rc" => Ok(ModelKind::ParallelRc),
            "rc+r" => Ok(ModelKind::ParallelRcSeriesR),
            "rc+w" => Ok(ModelKind::ParallelRcWarburg),
            other => Err(format!("unknown model `{other}` (expected rc, rc+r or rc+w)")),
        }
    }
}

/// Residual weighting applied to the real and imaginary components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Weighting {
    /// `1/|Z_i|²` on both components.
    #[default]
    Modulus,
    /// `1/Re(Z_i)²` and `1/Im(Z_i)²`, each floored at `(1e-3 |Z_i|)²`.
    Proportional,
    Unit,
}

impl FromStr for Weighting {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "modulus" => Ok(Weighting::Modulus),
            "proportional" => Ok(Weighting::Proportional),
            "unit" => Ok(Weighting::Unit),
            other => Err(format!(
                "unknown weighting `{other}` (expected modulus, proportional or unit)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitConfig {
    pub weighting: Weighting,
    pub max_iterations: usize,
    /// Largest accepted log-parameter step (relative parameter change) at convergence.
    pub param_tol: f64,
    /// Relative decrease of the objective at convergence.
    pub resid_tol: f64,
    pub damping_init: f64,
    /// Down-weight isolated phase spikes.
    pub phase_screening: bool,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            weighting: Weighting::Modulus,
            max_iterations: 200,
            param_tol: 1e-10,
            resid_tol: 1e-12,
            damping_init: 1e-3,
            phase_screening: true,
        }
    }
}

impl FitConfig {
    fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("param_tol", self.param_tol),
            ("resid_tol", self.resid_tol),
            ("damping_init", self.damping_init),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::domain(name, "finite and > 0", v));
            }
        }
        if self.max_iterations == 0 {
            return Err(Error::domain("max_iterations", ">= 1", 0.0));
        }
        Ok(())
    }
}

/// Circuit parameters in SI units. Optional entries are present only for the
/// model kinds that use them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitParams {
    pub r1_ohm: f64,
    pub c1_farad: f64,
    pub r2_ohm: Option<f64>,
    pub aw: Option<f64>,
}

impl FitParams {
    fn from_slice(kind: ModelKind, p: &[f64]) -> Self {
        let mut out = Self {
            r1_ohm: p[0],
            c1_farad: p[1],
            r2_ohm: None,
            aw: None,
        };
        match kind {
            ModelKind::ParallelRc => {}
            ModelKind::ParallelRcSeriesR => out.r2_ohm = Some(p[2]),
            ModelKind::ParallelRcWarburg => out.aw = Some(p[2]),
        }
        out
    }

    /// Network realising these parameters under `kind`.
    pub fn network(&self, kind: ModelKind) -> Result<CircuitNetwork> {
        let missing = |name: &str| Error::InvalidNetwork(format!("{name} missing for {kind}"));
        match kind {
            ModelKind::ParallelRc => CircuitNetwork::parallel_rc(self.r1_ohm, self.c1_farad),
            ModelKind::ParallelRcSeriesR => CircuitNetwork::parallel_rc_series_r(
                self.r1_ohm,
                self.c1_farad,
                self.r2_ohm.ok_or_else(|| missing("R2"))?,
            ),
            ModelKind::ParallelRcWarburg => CircuitNetwork::randles(
                self.r1_ohm,
                self.c1_farad,
                self.aw.ok_or_else(|| missing("Aw"))?,
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub model: ModelKind,
    pub params: FitParams,
    /// `sqrt(Σ w_i |ΔZ_i|² / N)`.
    pub residual_norm: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Linearized standard errors at the solution, same layout as `params`.
    pub param_stderr: FitParams,
    /// Samples down-weighted by phase screening.
    pub phase_outliers: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialGuess {
    pub r_init: f64,
    pub c_init: f64,
    /// No sample reached -10° of phase, so `c_init` is a placeholder.
    pub low_confidence: bool,
}

/// Capacitance used when the spectrum shows no capacitive phase.
pub const FALLBACK_CAPACITANCE: f64 = 1e-10;

/// Starting values for a parallel RC: the low-frequency plateau and the -45° point.
pub fn initial_guess_rc(s: &Spectrum) -> Result<InitialGuess> {
    let n = s.len();
    let (f_lo, f_hi) = freq_span(s);
    if n < 5 || f_hi / f_lo < 100.0 * (1.0 - 1e-9) {
        return Err(Error::InsufficientData(format!(
            "initial guess needs >= 5 samples over >= 2 decades, got {n} samples over {:.2} decades",
            (f_hi / f_lo).log10()
        )));
    }
    let lowest = lowest_sample(s);
    let r_init = lowest.z.norm();
    if r_init.is_nan() || r_init <= 0.0 {
        return Err(Error::InvalidSpectrum("zero impedance at the lowest frequency".into()));
    }
    let phases: Vec<f64> = s.samples().iter().map(|x| phase_degrees(x.z)).collect();
    if phases.iter().all(|&p| p >= -10.0) {
        return Ok(InitialGuess {
            r_init,
            c_init: FALLBACK_CAPACITANCE,
            low_confidence: true,
        });
    }
    let (i45, _) = phases
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 + 45.0).abs().total_cmp(&(b.1 + 45.0).abs()))
        .expect("spectrum is non-empty");
    let f45 = s.samples()[i45].freq_hz;
    Ok(InitialGuess {
        r_init,
        c_init: 1.0 / (2.0 * PI * f45 * r_init),
        low_confidence: false,
    })
}

fn freq_span(s: &Spectrum) -> (f64, f64) {
    s.frequencies()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), f| (lo.min(f), hi.max(f)))
}

fn lowest_sample(s: &Spectrum) -> Sample {
    *s.samples()
        .iter()
        .min_by(|a, b| a.freq_hz.total_cmp(&b.freq_hz))
        .expect("spectrum is non-empty")
}

fn highest_sample(s: &Spectrum) -> Sample {
    *s.samples()
        .iter()
        .max_by(|a, b| a.freq_hz.total_cmp(&b.freq_hz))
        .expect("spectrum is non-empty")
}

/// Model impedance and its derivatives with respect to each physical parameter.
fn model_response(kind: ModelKind, p: &[f64], omega: f64) -> (Complex64, [Complex64; 3]) {
    let j = Complex64::i();
    let zero = Complex64::new(0.0, 0.0);
    match kind {
        ModelKind::ParallelRc | ModelKind::ParallelRcSeriesR => {
            let (r, c) = (p[0], p[1]);
            let den = Complex64::new(1.0, omega * r * c);
            let den2 = den * den;
            let z_rc = r / den;
            let dr = 1.0 / den2;
            let dc = -j * omega * r * r / den2;
            if kind == ModelKind::ParallelRc {
                (z_rc, [dr, dc, zero])
            } else {
                (z_rc + p[2], [dr, dc, Complex64::new(1.0, 0.0)])
            }
        }
        ModelKind::ParallelRcWarburg => {
            let (r, c, aw) = (p[0], p[1], p[2]);
            let w_unit = Complex64::new(1.0, -1.0) / omega.sqrt();
            let zf = r + aw * w_unit;
            let den = 1.0 + j * omega * c * zf;
            let den2 = den * den;
            let dzf = 1.0 / den2;
            (zf / den, [dzf, -j * omega * zf * zf / den2, dzf * w_unit])
        }
    }
}

/// Marks samples whose phase differs by more than 60° from both neighbours.
pub fn phase_outliers(s: &Spectrum) -> Vec<bool> {
    let phases: Vec<f64> = s.samples().iter().map(|x| phase_degrees(x.z)).collect();
    let dist = |a: f64, b: f64| {
        let d = (a - b).rem_euclid(360.0);
        d.min(360.0 - d)
    };
    (0..phases.len())
        .map(|i| {
            i > 0
                && i + 1 < phases.len()
                && dist(phases[i], phases[i - 1]) > 60.0
                && dist(phases[i], phases[i + 1]) > 60.0
        })
        .collect()
}

struct Problem<'a> {
    kind: ModelKind,
    samples: &'a [Sample],
    omegas: Vec<f64>,
    /// sqrt of the real- and imaginary-part weights.
    sqrt_w: Vec<(f64, f64)>,
}

impl<'a> Problem<'a> {
    fn new(s: &'a Spectrum, kind: ModelKind, cfg: &FitConfig) -> (Self, usize) {
        let outliers = if cfg.phase_screening {
            phase_outliers(s)
        } else {
            vec![false; s.len()]
        };
        let sqrt_w = s
            .samples()
            .iter()
            .zip(&outliers)
            .map(|(x, &out)| {
                let m2 = x.z.norm_sqr();
                let (wr, wi) = match cfg.weighting {
                    Weighting::Modulus => (1.0 / m2, 1.0 / m2),
                    Weighting::Proportional => {
                        let floor = 1e-6 * m2;
                        (1.0 / (x.z.re * x.z.re).max(floor), 1.0 / (x.z.im * x.z.im).max(floor))
                    }
                    Weighting::Unit => (1.0, 1.0),
                };
                let k = if out { 0.1 } else { 1.0 };
                ((wr * k).sqrt(), (wi * k).sqrt())
            })
            .collect();
        let problem = Self {
            kind,
            samples: s.samples(),
            omegas: s.samples().iter().map(|x| x.omega()).collect(),
            sqrt_w,
        };
        (problem, outliers.iter().filter(|&&o| o).count())
    }

    fn n_resid(&self) -> usize {
        2 * self.samples.len()
    }

    fn residuals(&self, theta: &DVector<f64>) -> DVector<f64> {
        let p: Vec<f64> = theta.iter().map(|t| t.exp()).collect();
        let mut r = DVector::zeros(self.n_resid());
        for (i, (x, &w)) in self.samples.iter().zip(&self.omegas).enumerate() {
            let (zm, _) = model_response(self.kind, &p, w);
            let d = zm - x.z;
            let (sr, si) = self.sqrt_w[i];
            r[2 * i] = sr * d.re;
            r[2 * i + 1] = si * d.im;
        }
        r
    }

    fn jacobian(&self, theta: &DVector<f64>) -> DMatrix<f64> {
        let n = theta.len();
        let p: Vec<f64> = theta.iter().map(|t| t.exp()).collect();
        let mut jac = DMatrix::zeros(self.n_resid(), n);
        for (i, &w) in self.omegas.iter().enumerate() {
            let (_, dz) = model_response(self.kind, &p, w);
            let (sr, si) = self.sqrt_w[i];
            for k in 0..n {
                // d/dθ = p d/dp for θ = ln p
                let g = dz[k] * p[k];
                jac[(2 * i, k)] = sr * g.re;
                jac[(2 * i + 1, k)] = si * g.im;
            }
        }
        jac
    }
}

struct LmOutcome {
    theta: DVector<f64>,
    cost: f64,
    iterations: usize,
    converged: bool,
    jacobian: DMatrix<f64>,
}

fn half_sq(r: &DVector<f64>) -> f64 {
    0.5 * r.norm_squared()
}

// Largest change of any ln-parameter in one step.
const MAX_LOG_STEP: f64 = 2.0;

fn levenberg_marquardt(problem: &Problem, theta0: DVector<f64>, cfg: &FitConfig) -> LmOutcome {
    let n = theta0.len();
    let mut theta = theta0;
    let mut resid = problem.residuals(&theta);
    let mut cost = half_sq(&resid);
    let mut lambda = cfg.damping_init;
    let mut converged = false;
    let mut iterations = 0;

    while iterations < cfg.max_iterations {
        iterations += 1;
        let jac = problem.jacobian(&theta);
        let jtj = jac.transpose() * &jac;
        let grad = jac.transpose() * &resid;

        let mut accepted = None;
        let mut any_solved = false;
        while lambda <= 1e16 {
            let mut a = jtj.clone();
            for k in 0..n {
                a[(k, k)] += lambda * jtj[(k, k)];
            }
            let step = a.cholesky().map(|ch| -ch.solve(&grad));
            match step {
                Some(mut step) if step.iter().all(|v| v.is_finite()) => {
                    any_solved = true;
                    let big = step.amax();
                    if big > MAX_LOG_STEP {
                        step *= MAX_LOG_STEP / big;
                    }
                    let trial = &theta + &step;
                    let trial_resid = problem.residuals(&trial);
                    let trial_cost = half_sq(&trial_resid);
                    if trial_cost.is_finite() && trial_cost < cost {
                        accepted = Some((trial, trial_resid, trial_cost, step));
                        lambda = (lambda / 10.0).max(1e-15);
                        break;
                    }
                    lambda *= 10.0;
                }
                _ => lambda *= 10.0,
            }
        }

        match accepted {
            Some((trial, trial_resid, trial_cost, step)) => {
                let step_max = step.amax();
                let decrease = cost - trial_cost;
                theta = trial;
                resid = trial_resid;
                let old_cost = cost;
                cost = trial_cost;
                if step_max <= cfg.param_tol || decrease <= cfg.resid_tol * old_cost {
                    converged = true;
                    break;
                }
                lambda = lambda.max(1e-15);
            }
            None => {
                // No descent at any damping: either a stationary point to machine
                // precision, or a Jacobian that is singular at every damping level.
                converged = any_solved;
                break;
            }
        }
        if lambda > 1e16 {
            lambda = cfg.damping_init;
        }
    }

    let jacobian = problem.jacobian(&theta);
    LmOutcome {
        theta,
        cost,
        iterations,
        converged,
        jacobian,
    }
}

fn standard_errors(outcome: &LmOutcome, n_resid: usize) -> Vec<f64> {
    let n = outcome.theta.len();
    let dof = n_resid.saturating_sub(n).max(1) as f64;
    let s2 = 2.0 * outcome.cost / dof;
    let jtj = outcome.jacobian.transpose() * &outcome.jacobian;
    match jtj.try_inverse() {
        Some(cov) => (0..n)
            .map(|k| outcome.theta[k].exp() * (s2 * cov[(k, k)]).max(0.0).sqrt())
            .collect(),
        None => vec![f64::NAN; n],
    }
}

/// Deterministic set of starting points for `kind`.
fn starting_points(s: &Spectrum, kind: ModelKind) -> Vec<Vec<f64>> {
    let low = lowest_sample(s);
    let high = highest_sample(s);
    let z_low = low.z.norm().max(f64::MIN_POSITIVE);

    // Parallel RC from the admittance: Y = 1/R + jωC.
    let admittance_rc = |offset: f64| -> Option<(f64, f64)> {
        let mut g = Vec::new();
        let mut c = Vec::new();
        for x in s.samples() {
            let y = (x.z - offset).inv();
            if y.is_finite() {
                g.push(y.re);
                c.push(y.im / x.omega());
            }
        }
        let k = (g.len() / 4).max(1);
        // Conductance is best resolved at low frequency, capacitance at high frequency.
        let mut by_freq: Vec<(f64, f64, f64)> = s
            .samples()
            .iter()
            .zip(g.iter().zip(&c))
            .map(|(x, (&g, &c))| (x.freq_hz, g, c))
            .collect();
        by_freq.sort_by(|a, b| a.0.total_cmp(&b.0));
        let g_low = by_freq[..k].iter().map(|t| t.1).sum::<f64>() / k as f64;
        let c_high = by_freq[by_freq.len() - k..].iter().map(|t| t.2).sum::<f64>() / k as f64;
        (g_low > 0.0 && c_high > 0.0).then(|| (1.0 / g_low, c_high))
    };

    let mut rc_starts: Vec<(f64, f64)> = Vec::new();
    if let Ok(g) = initial_guess_rc(s) {
        rc_starts.push((g.r_init, g.c_init));
    }
    if let Some(rc) = admittance_rc(0.0) {
        rc_starts.push(rc);
    }
    if rc_starts.is_empty() {
        rc_starts.push((z_low, FALLBACK_CAPACITANCE));
    }

    match kind {
        ModelKind::ParallelRc => rc_starts.iter().map(|&(r, c)| vec![r, c]).collect(),
        ModelKind::ParallelRcSeriesR => {
            let r2_est = high.z.re;
            let mut out = Vec::new();
            if r2_est > 0.0 && r2_est < low.z.re {
                if let Some((r1, c1)) = admittance_rc(r2_est) {
                    out.push(vec![r1, c1, r2_est]);
                }
            }
            for &(r, c) in &rc_starts {
                for frac in [0.1, 0.01] {
                    out.push(vec![r * (1.0 - frac), c, r * frac]);
                }
            }
            out
        }
        ModelKind::ParallelRcWarburg => {
            let w_low = low.omega().sqrt();
            let mut out = Vec::new();
            for &(r, c) in &rc_starts {
                for frac in [1e-2, 1e-1, 1.0, 10.0] {
                    out.push(vec![r, c, frac * r * w_low]);
                }
            }
            out
        }
    }
}

/// Fits `kind` to the spectrum by weighted complex least squares.
pub fn fit_model(s: &Spectrum, kind: ModelKind, cfg: &FitConfig) -> Result<FitResult> {
    cfg.validate()?;
    let n_params = kind.param_count();
    if s.len() < 2 * n_params {
        return Err(Error::InsufficientData(format!(
            "{kind} fit needs >= {} samples, got {}",
            2 * n_params,
            s.len()
        )));
    }

    let (problem, phase_outliers) = Problem::new(s, kind, cfg);
    let mut best: Option<LmOutcome> = None;
    for start in starting_points(s, kind) {
        if start.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            continue;
        }
        let theta0 = DVector::from_iterator(n_params, start.iter().map(|v| v.ln()));
        let outcome = levenberg_marquardt(&problem, theta0, cfg);
        let better = match &best {
            None => true,
            Some(b) => match (outcome.converged, b.converged) {
                (true, false) => true,
                (false, true) => false,
                _ => outcome.cost < b.cost,
            },
        };
        if better {
            best = Some(outcome);
        }
    }
    let best = best.ok_or_else(|| Error::InsufficientData("no usable starting point".into()))?;

    let p: Vec<f64> = best.theta.iter().map(|t| t.exp()).collect();
    let se = standard_errors(&best, problem.n_resid());
    Ok(FitResult {
        model: kind,
        params: FitParams::from_slice(kind, &p),
        residual_norm: (2.0 * best.cost / s.len() as f64).sqrt(),
        iterations: best.iterations,
        converged: best.converged && p.iter().all(|v| v.is_finite() && *v > 0.0),
        param_stderr: FitParams::from_slice(kind, &se),
        phase_outliers,
    })
}

/// Least-squares slope of log|Z| against log ω.
pub fn loglog_slope(samples: &[Sample]) -> f64 {
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .map(|x| (x.omega().log10(), x.z.norm().log10()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[derive(Debug, Clone, PartialEq)]
pub enum WarburgDetection {
    Determined {
        present: bool,
        slope: f64,
        phase_low_deg: f64,
    },
    Indeterminate(String),
}

impl WarburgDetection {
    pub fn is_present(&self) -> bool {
        matches!(self, WarburgDetection::Determined { present: true, .. })
    }
}

/// Minimum samples inside the lowest decade for a Warburg decision.
const WARBURG_MIN_SAMPLES: usize = 3;

/// Looks for the diffusion signature in the lowest-frequency decade: log-log slope
/// in [-0.6, -0.4] and median phase in [-55°, -35°].
pub fn detect_warburg(s: &Spectrum) -> WarburgDetection {
    let (f_lo, f_hi) = freq_span(s);
    let top = 10.0 * f_lo * (1.0 + 1e-9);
    if f_hi < 10.0 * f_lo * (1.0 - 1e-9) {
        return WarburgDetection::Indeterminate(format!(
            "spectrum spans {:.2} decades, need at least one",
            (f_hi / f_lo).log10()
        ));
    }
    let decade: Vec<Sample> = s.samples().iter().copied().filter(|x| x.freq_hz <= top).collect();
    if decade.len() < WARBURG_MIN_SAMPLES {
        return WarburgDetection::Indeterminate(format!(
            "{} samples in the lowest decade, need {WARBURG_MIN_SAMPLES}",
            decade.len()
        ));
    }
    let slope = loglog_slope(&decade);
    let mut phases: Vec<f64> = decade.iter().map(|x| phase_degrees(x.z)).collect();
    phases.sort_by(f64::total_cmp);
    let m = phases.len();
    let median = if m % 2 == 1 {
        phases[m / 2]
    } else {
        0.5 * (phases[m / 2 - 1] + phases[m / 2])
    };
    WarburgDetection::Determined {
        present: (-0.6..=-0.4).contains(&slope) && (-55.0..=-35.0).contains(&median),
        slope,
        phase_low_deg: median,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    FullFilm,
    Mixed,
    Boundary,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::FullFilm => "FullFilm",
            Regime::Mixed => "Mixed",
            Regime::Boundary => "Boundary",
        })
    }
}

impl FromStr for Regime {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "FullFilm" => Ok(Regime::FullFilm),
            "Mixed" => Ok(Regime::Mixed),
            "Boundary" => Ok(Regime::Boundary),
            other => Err(format!("unknown regime `{other}`")),
        }
    }
}

/// Multiples of the stationary resistance R0 that separate the regimes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeThresholds {
    pub boundary_factor: f64,
    pub open_factor: f64,
}

impl Default for RegimeThresholds {
    fn default() -> Self {
        Self {
            boundary_factor: 10.0,
            open_factor: 1e4,
        }
    }
}

pub fn classify_resistance(r1_ohm: f64, r0_ohm: f64, t: &RegimeThresholds) -> Regime {
    if r1_ohm < t.boundary_factor * r0_ohm {
        Regime::Boundary
    } else if r1_ohm > t.open_factor * r0_ohm {
        Regime::FullFilm
    } else {
        Regime::Mixed
    }
}

pub fn classify_regime(fit: &FitResult, r0_ohm: f64) -> Regime {
    classify_resistance(fit.params.r1_ohm, r0_ohm, &RegimeThresholds::default())
}
