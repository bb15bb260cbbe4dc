//! Elastohydrodynamic central film thickness and the glass-to-steel transfer.

use crate::error::{ensure_positive, Error, Result};

pub const SPEED_EXPONENT: f64 = 0.68;
pub const PRESSURE_VISCOSITY_EXPONENT: f64 = 0.53;
pub const LOAD_EXPONENT: f64 = -0.067;
/// Net exponent of E' in the film thickness: -0.68 + 0.53 + 0.067.
pub const MODULUS_EXPONENT: f64 = -0.083;

/// Ellipticity factor for a circular point contact.
pub const DEFAULT_ELLIPTICITY_FACTOR: f64 = 1.9;

/// Reduced moduli quoted for the interferometer (steel/glass) and MTM (steel/steel) pairs.
pub const REDUCED_MODULUS_STEEL_GLASS: f64 = 1.17e11;
pub const REDUCED_MODULUS_STEEL_STEEL: f64 = 2.26e11;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialPair {
    pub e1_pa: f64,
    pub nu1: f64,
    pub e2_pa: f64,
    pub nu2: f64,
}

/// `2/E' = (1-ν1²)/E1 + (1-ν2²)/E2`. An infinite modulus models a rigid counterface.
pub fn reduced_modulus(m: &MaterialPair) -> Result<f64> {
    for (name, e) in [("E1", m.e1_pa), ("E2", m.e2_pa)] {
        if e.is_nan() || e <= 0.0 {
            return Err(Error::domain(name, "> 0", e));
        }
    }
    for (name, nu) in [("nu1", m.nu1), ("nu2", m.nu2)] {
        if !(nu > 0.0 && nu < 0.5) {
            return Err(Error::domain(name, "in (0, 0.5)", nu));
        }
    }
    let compliance = (1.0 - m.nu1 * m.nu1) / m.e1_pa + (1.0 - m.nu2 * m.nu2) / m.e2_pa;
    Ok(2.0 / compliance)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EhdInputs {
    pub k_ellipticity: f64,
    pub reduced_radius_m: f64,
    pub entrainment_speed_m_s: f64,
    pub viscosity_pa_s: f64,
    pub reduced_modulus_pa: f64,
    /// Pressure-viscosity coefficient in 1/Pa.
    pub pressure_viscosity_coeff_per_pa: f64,
    pub load_n: f64,
}

/// Dowson–Hamrock central film thickness in meters.
pub fn dowson_hamrock_hc(input: &EhdInputs) -> Result<f64> {
    let k = ensure_positive("ellipticity factor", input.k_ellipticity)?;
    let r = ensure_positive("reduced radius", input.reduced_radius_m)?;
    let u = ensure_positive("entrainment speed", input.entrainment_speed_m_s)?;
    let eta = ensure_positive("viscosity", input.viscosity_pa_s)?;
    let e = ensure_positive("reduced modulus", input.reduced_modulus_pa)?;
    let alpha = ensure_positive("pressure-viscosity coefficient", input.pressure_viscosity_coeff_per_pa)?;
    let w = ensure_positive("load", input.load_n)?;

    let speed = u * eta / (e * r);
    let material = alpha * e;
    let load = w / (e * r * r);
    Ok(k * r
        * speed.powf(SPEED_EXPONENT)
        * material.powf(PRESSURE_VISCOSITY_EXPONENT)
        * load.powf(LOAD_EXPONENT))
}

/// Film thickness ratio between two material pairs at identical operating conditions,
/// `(E'_target / E'_source)^-0.083`.
pub fn material_conversion_factor(e_target_pa: f64, e_source_pa: f64) -> Result<f64> {
    ensure_positive("target reduced modulus", e_target_pa)?;
    ensure_positive("source reduced modulus", e_source_pa)?;
    Ok((e_target_pa / e_source_pa).powf(MODULUS_EXPONENT))
}

/// Scales an interferometer (steel/glass) film thickness to the steel/steel contact.
pub fn convert_utfi_to_mtm(h_utfi_m: f64, factor: f64) -> Result<f64> {
    ensure_positive("film thickness", h_utfi_m)?;
    ensure_positive("conversion factor", factor)?;
    Ok(h_utfi_m * factor)
}
