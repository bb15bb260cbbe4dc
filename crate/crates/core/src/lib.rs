//! Equivalent-circuit models of lubricated contacts from electrical impedance spectra.
//!
//! The crate covers the whole identification chain:
//!
//! - [`circuit`]: element and network impedance, frequency sweeps, Bode/Nyquist tables
//!   and seeded synthetic spectra.
//! - [`contact`]: hand-derived ball-on-disc and eccentric-cylinder capacitance models and
//!   the inverse map from measured (R, C) to film thickness and breakdown ratio.
//! - [`ehd`]: Dowson–Hamrock central film thickness and the glass-to-steel conversion.
//! - [`fit`]: complex nonlinear least-squares identification of RC-type models,
//!   Warburg detection and lubrication regime classification.
//! - [`calibration`]: merging fits with interferometry data and the empirical
//!   `h = h(R, C)` thickness model.
//! - [`io`] and [`plot`]: file formats and SVG export.

pub mod calibration;
pub mod circuit;
pub mod contact;
pub mod ehd;
mod error;
pub mod fit;
pub mod interp;
pub mod io;
pub mod plot;

pub use calibration::{
    build_thickness_model, merge_datasets, model_response_family, CalibrationRecord,
    FittedPoint, OperatingPoint, ThicknessEstimate, ThicknessModel,
};
pub use circuit::{
    cutoff_frequency, element_impedance, network_impedance, sweep, synth_spectrum, to_bode,
    to_nyquist, CircuitElement, CircuitNetwork, ElementKind, FrequencyGrid, NoiseSpec, Sample,
    Spectrum,
};
pub use contact::{
    breakdown_resistance, hertz_radius, invert_ball_on_disc, BallOnDiscGeometry, BallOnDiscModel,
    CylinderModel, HertzContact, Resistance,
};
pub use error::{Error, Result};
pub use fit::{
    classify_regime, detect_warburg, fit_model, initial_guess_rc, FitConfig, FitResult, ModelKind,
    Regime, Weighting,
};

pub use num_complex::Complex64;
