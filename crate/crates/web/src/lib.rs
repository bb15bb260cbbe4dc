//! Browser bindings for the demo page in `www/`.

use tribo_eis::circuit::{cutoff_frequency, sweep, synth_spectrum, CircuitNetwork, FrequencyGrid, NoiseSpec, Spectrum};
use tribo_eis::contact::{BallOnDiscGeometry, HertzContact};
use tribo_eis::fit::{classify_regime, fit_model, FitConfig, ModelKind};
use tribo_eis::plot::{bode_svg, nyquist_svg, Series, Style};
use wasm_bindgen::prelude::*;

fn js(e: tribo_eis::Error) -> JsError {
    JsError::new(&e.to_string())
}

fn grid(lo_hz: f64, hi_hz: f64, ppd: f64) -> Result<FrequencyGrid, JsError> {
    FrequencyGrid::logarithmic_with_limits(lo_hz, hi_hz, ppd, (1e-6, 1e12)).map_err(js)
}

fn network(model: &str, r1: f64, c1: f64, extra: f64) -> Result<CircuitNetwork, JsError> {
    let kind: ModelKind = model.parse().map_err(|m: String| JsError::new(&m))?;
    match kind {
        ModelKind::ParallelRc => CircuitNetwork::parallel_rc(r1, c1),
        ModelKind::ParallelRcSeriesR => CircuitNetwork::parallel_rc_series_r(r1, c1, extra),
        ModelKind::ParallelRcWarburg => CircuitNetwork::randles(r1, c1, extra),
    }
    .map_err(js)
}

fn plots(series: &[Series]) -> Plots {
    Plots { bode: bode_svg(series), nyquist: nyquist_svg(series) }
}

#[wasm_bindgen]
pub struct Plots {
    bode: String,
    nyquist: String,
}

#[wasm_bindgen]
impl Plots {
    #[wasm_bindgen(getter)]
    pub fn bode(&self) -> String {
        self.bode.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn nyquist(&self) -> String {
        self.nyquist.clone()
    }
}

/// Bode and Nyquist plots of `rc`, `rc+r` (extra = R2) or `rc+w` (extra = Warburg coefficient).
#[wasm_bindgen(js_name = circuitPlots)]
pub fn circuit_plots(model: &str, r1: f64, c1: f64, extra: f64, lo_hz: f64, hi_hz: f64) -> Result<Plots, JsError> {
    let s = sweep(&network(model, r1, c1, extra)?, &grid(lo_hz, hi_hz, 10.0)?).map_err(js)?;
    Ok(plots(&[Series { label: model, spectrum: &s, style: Style::Line }]))
}

#[wasm_bindgen]
pub struct ContactState {
    hertz_radius_m: f64,
    c_hertz_f: f64,
    c_surround_f: f64,
    /// Negative when the film is intact (open circuit).
    r_ohm: f64,
    cutoff_hz: f64,
    plots: Plots,
}

#[wasm_bindgen]
impl ContactState {
    #[wasm_bindgen(getter, js_name = hertzRadiusM)]
    pub fn hertz_radius_m(&self) -> f64 {
        self.hertz_radius_m
    }
    #[wasm_bindgen(getter, js_name = cHertzF)]
    pub fn c_hertz_f(&self) -> f64 {
        self.c_hertz_f
    }
    #[wasm_bindgen(getter, js_name = cSurroundF)]
    pub fn c_surround_f(&self) -> f64 {
        self.c_surround_f
    }
    #[wasm_bindgen(getter, js_name = rOhm)]
    pub fn r_ohm(&self) -> f64 {
        self.r_ohm
    }
    #[wasm_bindgen(getter, js_name = cutoffHz)]
    pub fn cutoff_hz(&self) -> f64 {
        self.cutoff_hz
    }
    #[wasm_bindgen(getter)]
    pub fn bode(&self) -> String {
        self.plots.bode.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn nyquist(&self) -> String {
        self.plots.nyquist.clone()
    }
}

/// Ball-on-disc contact at film thickness `h_nm` and breakdown ratio `alpha`.
#[wasm_bindgen(js_name = contactExplorer)]
#[allow(clippy::too_many_arguments)]
pub fn contact_explorer(
    h_nm: f64,
    alpha: f64,
    ball_radius_m: f64,
    load_n: f64,
    reduced_modulus_pa: f64,
    epsilon_r: f64,
    r0_ohm: f64,
) -> Result<ContactState, JsError> {
    let hertz = HertzContact::new(load_n, ball_radius_m, reduced_modulus_pa).map_err(js)?;
    let g = BallOnDiscGeometry::from_hertz(&hertz, ball_radius_m, epsilon_r, r0_ohm).map_err(js)?;
    let m = g.with_film(h_nm * 1e-9, alpha).map_err(js)?;
    let c1 = m.capacitance_hertz_zone().map_err(js)?;
    let c2 = m.capacitance_surround().map_err(js)?;
    let r = m.resistance().map_err(js)?.ohms();
    let s = sweep(&m.network().map_err(js)?, &grid(1e-2, 1e8, 10.0)?).map_err(js)?;
    let label = format!("h = {h_nm} nm");
    Ok(ContactState {
        hertz_radius_m: hertz.hertz_radius_m,
        c_hertz_f: c1,
        c_surround_f: c2,
        r_ohm: if r.is_finite() { r } else { -1.0 },
        cutoff_hz: if r.is_finite() { cutoff_frequency(r, c1 + c2).map_err(js)? } else { 0.0 },
        plots: plots(&[Series { label: &label, spectrum: &s, style: Style::Line }]),
    })
}

#[wasm_bindgen]
pub struct FitOutcome {
    summary: String,
    plots: Plots,
}

#[wasm_bindgen]
impl FitOutcome {
    /// One `name = value` pair per line.
    #[wasm_bindgen(getter)]
    pub fn summary(&self) -> String {
        self.summary.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn bode(&self) -> String {
        self.plots.bode.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn nyquist(&self) -> String {
        self.plots.nyquist.clone()
    }
}

/// Synthesizes a noisy parallel-RC spectrum and fits `model` to it.
#[wasm_bindgen(js_name = fitSynthetic)]
pub fn fit_synthetic(r1: f64, c1: f64, sigma: f64, seed: u32, model: &str) -> Result<FitOutcome, JsError> {
    let kind: ModelKind = model.parse().map_err(|m: String| JsError::new(&m))?;
    let truth = CircuitNetwork::parallel_rc(r1, c1).map_err(js)?;
    let fc = cutoff_frequency(r1, c1).map_err(js)?;
    let g = grid(fc * 1e-3, fc * 1e3, 10.0)?;
    let data = synth_spectrum(&truth, &g, NoiseSpec::new(sigma).map_err(js)?, seed as u64).map_err(js)?;
    let fit = fit_model(&data, kind, &FitConfig::default()).map_err(js)?;
    let curve: Spectrum = sweep(&fit.params.network(kind).map_err(js)?, &g).map_err(js)?;

    let p = &fit.params;
    let mut summary = format!(
        "r1_ohm = {:.6e}\nc1_farad = {:.6e}\n",
        p.r1_ohm, p.c1_farad
    );
    if let Some(r2) = p.r2_ohm {
        summary += &format!("r2_ohm = {r2:.6e}\n");
    }
    if let Some(aw) = p.aw {
        summary += &format!("aw = {aw:.6e}\n");
    }
    summary += &format!(
        "residual_norm = {:.3e}\niterations = {}\nconverged = {}\nregime = {}\n",
        fit.residual_norm,
        fit.iterations,
        fit.converged,
        classify_regime(&fit, tribo_eis::contact::DEFAULT_STATIONARY_RESISTANCE)
    );
    Ok(FitOutcome {
        summary,
        plots: plots(&[
            Series { label: "data", spectrum: &data, style: Style::Markers },
            Series { label: "fit", spectrum: &curve, style: Style::Line },
        ]),
    })
}
