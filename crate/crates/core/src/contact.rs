//! Hand-derived capacitance models for lubricated contacts.
//!
//! The ball-on-disc model splits the contact into the Hertz zone, which behaves
//! as a parallel-plate capacitor reduced by the breakdown ratio α, and the
//! surrounding meniscus region between the curved ball and the flat disc. The
//! resistance is carried only by the broken-down fraction of the Hertz zone.
//!
//! Symbols: `a` is the Hertz contact radius, `r` the ball radius, `h` the
//! central film thickness.

use std::f64::consts::PI;

use crate::circuit::CircuitNetwork;
use crate::error::{ensure_positive, Error, Result};

/// Permittivity of free space in F/m.
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;

/// Stationary contact resistance used when none is measured (boundary-regime DC level).
pub const DEFAULT_STATIONARY_RESISTANCE: f64 = 10.0;

/// Film-thickness search bracket for the inverse model, in meters.
pub const FILM_BRACKET: (f64, f64) = (1e-11, 1e-4);

/// Radius of a circular Hertz contact, `a = (3 W R' / (2 E'))^(1/3)`.
///
/// `reduced_modulus_pa` follows the EHL convention `2/E' = (1-ν1²)/E1 + (1-ν2²)/E2`.
pub fn hertz_radius(load_n: f64, reduced_radius_m: f64, reduced_modulus_pa: f64) -> Result<f64> {
    ensure_positive("load", load_n)?;
    ensure_positive("reduced radius", reduced_radius_m)?;
    ensure_positive("reduced modulus", reduced_modulus_pa)?;
    Ok((3.0 * load_n * reduced_radius_m / (2.0 * reduced_modulus_pa)).cbrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HertzContact {
    pub load_n: f64,
    pub reduced_radius_m: f64,
    pub reduced_modulus_pa: f64,
    pub hertz_radius_m: f64,
}

impl HertzContact {
    pub fn new(load_n: f64, reduced_radius_m: f64, reduced_modulus_pa: f64) -> Result<Self> {
        Ok(Self {
            load_n,
            reduced_radius_m,
            reduced_modulus_pa,
            hertz_radius_m: hertz_radius(load_n, reduced_radius_m, reduced_modulus_pa)?,
        })
    }
}

/// Fixed part of a ball-on-disc contact: everything except film thickness and α.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallOnDiscGeometry {
    pub permittivity_f_per_m: f64,
    pub hertz_radius_m: f64,
    pub ball_radius_m: f64,
    pub stationary_resistance_ohm: f64,
}

impl BallOnDiscGeometry {
    pub fn new(
        permittivity_f_per_m: f64,
        hertz_radius_m: f64,
        ball_radius_m: f64,
        stationary_resistance_ohm: f64,
    ) -> Result<Self> {
        ensure_positive("permittivity", permittivity_f_per_m)?;
        ensure_positive("Hertz radius", hertz_radius_m)?;
        ensure_positive("ball radius", ball_radius_m)?;
        ensure_positive("stationary resistance", stationary_resistance_ohm)?;
        if hertz_radius_m >= ball_radius_m {
            return Err(Error::ModelValidity(format!(
                "Hertz radius {hertz_radius_m} m must be smaller than ball radius {ball_radius_m} m"
            )));
        }
        Ok(Self {
            permittivity_f_per_m,
            hertz_radius_m,
            ball_radius_m,
            stationary_resistance_ohm,
        })
    }

    /// Ball on flat disc: the reduced radius is the ball radius.
    pub fn from_hertz(
        contact: &HertzContact,
        ball_radius_m: f64,
        epsilon_r: f64,
        r0_ohm: f64,
    ) -> Result<Self> {
        ensure_positive("relative permittivity", epsilon_r)?;
        Self::new(
            epsilon_r * VACUUM_PERMITTIVITY,
            contact.hertz_radius_m,
            ball_radius_m,
            r0_ohm,
        )
    }

    pub fn with_film(&self, film_thickness_m: f64, breakdown_ratio: f64) -> Result<BallOnDiscModel> {
        BallOnDiscModel::new(*self, film_thickness_m, breakdown_ratio)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallOnDiscModel {
    pub geometry: BallOnDiscGeometry,
    pub film_thickness_m: f64,
    pub breakdown_ratio: f64,
}

impl BallOnDiscModel {
    pub fn new(geometry: BallOnDiscGeometry, film_thickness_m: f64, breakdown_ratio: f64) -> Result<Self> {
        ensure_positive("film thickness", film_thickness_m)?;
        if !(0.0..=1.0).contains(&breakdown_ratio) {
            return Err(Error::domain("breakdown ratio", "in [0, 1]", breakdown_ratio));
        }
        Ok(Self {
            geometry,
            film_thickness_m,
            breakdown_ratio,
        })
    }

    /// Parallel-plate capacitance of the intact part of the Hertz zone, `ε π a² (1-α) / h`.
    pub fn capacitance_hertz_zone(&self) -> Result<f64> {
        let g = &self.geometry;
        ensure_positive("film thickness", self.film_thickness_m)?;
        let a = g.hertz_radius_m;
        Ok(g.permittivity_f_per_m * PI * a * a * (1.0 - self.breakdown_ratio) / self.film_thickness_m)
    }

    /// Capacitance of the region outside the Hertz zone.
    ///
    /// Integrates `2π ε x / gap(x)` from the Hertz edge to the ball radius, with the
    /// sphere-on-flat gap `h + r - sqrt(r² - x²)`:
    /// `C2 = 2π ε [(r + h) ln((r + h) / (h + r - sqrt(r² - a²))) - sqrt(r² - a²)]`.
    pub fn capacitance_surround(&self) -> Result<f64> {
        let g = &self.geometry;
        let (r, a, h) = (g.ball_radius_m, g.hertz_radius_m, self.film_thickness_m);
        ensure_positive("film thickness", h)?;
        if a >= r {
            return Err(Error::ModelValidity(format!(
                "surround capacitance undefined: Hertz radius {a} m reaches the ball radius {r} m"
            )));
        }
        let s = ((r - a) * (r + a)).sqrt();
        // r - s computed without cancellation.
        let edge_gap = h + a * a / (r + s);
        let c2 = 2.0 * PI * g.permittivity_f_per_m * ((r + h) * ((r + h) / edge_gap).ln() - s);
        if !(c2.is_finite() && c2 > 0.0) {
            return Err(Error::ModelValidity(format!(
                "surround capacitance is non-positive ({c2:e} F) for r={r} m, a={a} m, h={h} m; \
                 the closed form lost precision"
            )));
        }
        Ok(c2)
    }

    pub fn total_capacitance(&self) -> Result<f64> {
        Ok(self.capacitance_hertz_zone()? + self.capacitance_surround()?)
    }

    pub fn resistance(&self) -> Result<Resistance> {
        breakdown_resistance(self.geometry.stationary_resistance_ohm, self.breakdown_ratio)
    }

    /// Equivalent circuit: R1 in parallel with C1 + C2, or a bare capacitor when α = 0.
    pub fn network(&self) -> Result<CircuitNetwork> {
        let c = self.total_capacitance()?;
        match self.resistance()? {
            Resistance::Finite(r) => CircuitNetwork::parallel_rc(r, c),
            Resistance::OpenCircuit => CircuitNetwork::capacitor(c),
        }
    }
}

/// Contact resistance, with an explicit open-circuit state for a fully intact film.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Resistance {
    Finite(f64),
    OpenCircuit,
}

impl Resistance {
    pub fn ohms(&self) -> f64 {
        match self {
            Resistance::Finite(r) => *r,
            Resistance::OpenCircuit => f64::INFINITY,
        }
    }
}

/// `R1 = R0 / α`; α = 0 means no metallic path.
pub fn breakdown_resistance(r0_ohm: f64, alpha: f64) -> Result<Resistance> {
    ensure_positive("stationary resistance", r0_ohm)?;
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::domain("breakdown ratio", "in [0, 1]", alpha));
    }
    if alpha == 0.0 {
        Ok(Resistance::OpenCircuit)
    } else {
        Ok(Resistance::Finite(r0_ohm / alpha))
    }
}

/// Eccentric cylinders (journal-bearing geometry).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylinderModel {
    pub inner_radius_m: f64,
    pub outer_radius_m: f64,
    pub eccentricity_m: f64,
    pub length_m: f64,
    pub permittivity_f_per_m: f64,
}

impl CylinderModel {
    /// `C3 = 2π ε L / arcosh((r1² + r2² - d²) / (2 r1 r2))`.
    pub fn capacitance(&self) -> Result<f64> {
        let r1 = ensure_positive("inner radius", self.inner_radius_m)?;
        let r2 = ensure_positive("outer radius", self.outer_radius_m)?;
        let l = ensure_positive("length", self.length_m)?;
        let eps = ensure_positive("permittivity", self.permittivity_f_per_m)?;
        let d = self.eccentricity_m;
        if r1 >= r2 {
            return Err(Error::ModelValidity(format!(
                "inner radius {r1} m must be smaller than outer radius {r2} m"
            )));
        }
        if !(d.is_finite() && d >= 0.0) {
            return Err(Error::domain("eccentricity", "finite and >= 0", d));
        }
        let clearance = r2 - r1;
        if d > clearance {
            return Err(Error::domain(
                "eccentricity",
                "below the radial clearance (cylinders intersect)",
                d,
            ));
        }
        // arg - 1 = ((r2 - r1)² - d²) / (2 r1 r2), evaluated without cancellation.
        let excess = (clearance - d) * (clearance + d) / (2.0 * r1 * r2);
        if excess <= 0.0 {
            return Err(Error::Divergent("cylinder capacitance at touching eccentricity"));
        }
        // arcosh(1 + x) = ln(1 + x + sqrt(x (2 + x)))
        let acosh = (excess + (excess * (2.0 + excess)).sqrt()).ln_1p();
        Ok(2.0 * PI * eps * l / acosh)
    }
}

pub fn cylinder_capacitance(m: &CylinderModel) -> Result<f64> {
    m.capacitance()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inversion {
    pub film_thickness_m: f64,
    pub breakdown_ratio: f64,
    /// Measured resistance was below R0, so α was clamped to 1.
    pub saturated: bool,
}

/// Recovers (h, α) from a measured resistance and capacitance.
///
/// α follows from `R = R0/α` (clamped to [0, 1]); h is then the root of
/// `C_total(h, α) = c_meas`, found by bisection in log h over [`FILM_BRACKET`].
pub fn invert_ball_on_disc(
    r_meas: Resistance,
    c_meas: f64,
    geometry: &BallOnDiscGeometry,
) -> Result<Inversion> {
    ensure_positive("measured capacitance", c_meas)?;
    let r0 = geometry.stationary_resistance_ohm;
    let (alpha, saturated) = match r_meas {
        Resistance::OpenCircuit => (0.0, false),
        Resistance::Finite(r) => {
            ensure_positive("measured resistance", r)?;
            let a = r0 / r;
            if a > 1.0 {
                (1.0, true)
            } else {
                (a, false)
            }
        }
    };

    let cap = |h: f64| geometry.with_film(h, alpha)?.total_capacitance();
    let (lo, hi) = FILM_BRACKET;
    // Decreasing in h: largest capacitance at the thinnest film.
    let c_max = cap(lo)?;
    let c_min = cap(hi)?;
    if !(c_min..=c_max).contains(&c_meas) {
        return Err(Error::NoSolution {
            target: c_meas,
            min: c_min,
            max: c_max,
        });
    }

    let (mut a, mut b) = (lo.ln(), hi.ln());
    let mut best = (f64::INFINITY, lo);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let h = mid.exp();
        let c = cap(h)?;
        let resid = (c - c_meas).abs();
        if resid < best.0 {
            best = (resid, h);
        }
        if c > c_meas {
            a = mid;
        } else {
            b = mid;
        }
    }

    Ok(Inversion {
        film_thickness_m: best.1,
        breakdown_ratio: alpha,
        saturated,
    })
}
