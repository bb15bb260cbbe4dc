//! Film-thickness calibration from fitted (R, C) pairs.
//!
//! Fitted circuit parameters at each operating point are joined with
//! interferometer film thickness (converted to the steel/steel pair), then
//! turned into a monotone `h(C)` curve in log-log space. Resistance acts only
//! as a regime gate: below the breakdown threshold the contact is treated as
//! boundary-lubricated.

use crate::circuit::{sweep, FrequencyGrid, Spectrum};
use crate::contact::BallOnDiscGeometry;
use crate::error::{ensure_positive, Error, Result};
use crate::fit::{FitResult, Regime};
use crate::interp::MonotoneCubic;

/// Join tolerances for operating points.
pub const TEMPERATURE_TOL_C: f64 = 0.5;
pub const SPEED_REL_TOL: f64 = 0.01;
pub const LOAD_REL_TOL: f64 = 0.01;

/// Capacitance knots closer than this (relative) are merged.
pub const KNOT_MERGE_REL: f64 = 0.005;

/// Default breakdown threshold as a multiple of R0.
pub const DEFAULT_BREAKDOWN_FACTOR: f64 = 10.0;

/// Resistances at or above `threshold × FULL_FILM_RATIO` report a full film.
pub const FULL_FILM_RATIO: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    pub temperature_c: f64,
    pub speed_mm_s: f64,
    pub load_n: f64,
}

impl OperatingPoint {
    pub fn new(temperature_c: f64, speed_mm_s: f64, load_n: f64) -> Result<Self> {
        if !temperature_c.is_finite() {
            return Err(Error::domain("temperature", "finite", temperature_c));
        }
        if !(speed_mm_s.is_finite() && speed_mm_s >= 0.0) {
            return Err(Error::domain("speed", "finite and >= 0", speed_mm_s));
        }
        ensure_positive("load", load_n)?;
        Ok(Self {
            temperature_c,
            speed_mm_s,
            load_n,
        })
    }

    pub fn matches(&self, other: &OperatingPoint) -> bool {
        let rel = |a: f64, b: f64, tol: f64| (a - b).abs() <= tol * a.abs().max(b.abs());
        (self.temperature_c - other.temperature_c).abs() <= TEMPERATURE_TOL_C
            && rel(self.speed_mm_s, other.speed_mm_s, SPEED_REL_TOL)
            && rel(self.load_n, other.load_n, LOAD_REL_TOL)
    }
}

impl std::fmt::Display for OperatingPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "T={} C, U={} mm/s, W={} N",
            self.temperature_c, self.speed_mm_s, self.load_n
        )
    }
}

/// Fitted resistance and capacitance at one operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FittedPoint {
    pub op: OperatingPoint,
    pub r_ohm: f64,
    pub c_farad: f64,
}

impl FittedPoint {
    pub fn from_fit(op: OperatingPoint, fit: &FitResult) -> Self {
        Self {
            op,
            r_ohm: fit.params.r1_ohm,
            c_farad: fit.params.c1_farad,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalibrationRecord {
    pub op: OperatingPoint,
    pub r_ohm: f64,
    pub c_farad: f64,
    /// Central film thickness for the steel/steel contact.
    pub h_m: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct MergeOutcome {
    pub records: Vec<CalibrationRecord>,
    pub unmatched_fits: Vec<OperatingPoint>,
    pub unmatched_utfi: Vec<OperatingPoint>,
}

/// Inner join of fits and interferometer thickness on operating point.
///
/// Each side may match at most one row of the other; any second candidate
/// within tolerance is reported as an ambiguous join.
pub fn merge_datasets(
    fits: &[FittedPoint],
    utfi: &[(OperatingPoint, f64)],
    factor: f64,
) -> Result<MergeOutcome> {
    ensure_positive("conversion factor", factor)?;
    let mut used = vec![false; utfi.len()];
    let mut out = MergeOutcome::default();
    for fit in fits {
        let candidates: Vec<usize> = utfi
            .iter()
            .enumerate()
            .filter(|(_, (op, _))| fit.op.matches(op))
            .map(|(i, _)| i)
            .collect();
        match candidates.as_slice() {
            [] => out.unmatched_fits.push(fit.op),
            [i] => {
                if used[*i] {
                    return Err(Error::AmbiguousJoin(format!(
                        "interferometer row ({}) matches more than one fit",
                        utfi[*i].0
                    )));
                }
                used[*i] = true;
                let h_utfi = ensure_positive("interferometer film thickness", utfi[*i].1)?;
                out.records.push(CalibrationRecord {
                    op: fit.op,
                    r_ohm: fit.r_ohm,
                    c_farad: fit.c_farad,
                    h_m: h_utfi * factor,
                });
            }
            many => {
                let list: Vec<String> = many.iter().map(|&i| format!("({})", utfi[i].0)).collect();
                return Err(Error::AmbiguousJoin(format!(
                    "fit ({}) matches {}",
                    fit.op,
                    list.join(", ")
                )));
            }
        }
    }
    out.unmatched_utfi = utfi
        .iter()
        .zip(&used)
        .filter(|(_, &u)| !u)
        .map(|((op, _), _)| *op)
        .collect();
    Ok(out)
}

/// Calibrated `(R, C) -> h` map.
#[derive(Debug, Clone, PartialEq)]
pub struct ThicknessModel {
    /// `(log10 C [F], log10 h [m])`, increasing in C and strictly decreasing in h.
    knots: Vec<(f64, f64)>,
    breakdown_r_threshold_ohm: f64,
    pub provenance: Vec<CalibrationRecord>,
    curve: MonotoneCubic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThicknessEstimate {
    pub h_m: f64,
    pub regime: Regime,
    pub extrapolated: bool,
}

impl ThicknessModel {
    /// Builds a model directly from log10 knots, e.g. when loading from disk.
    pub fn from_knots(knots: Vec<(f64, f64)>, breakdown_r_threshold_ohm: f64) -> Result<Self> {
        ensure_positive("breakdown threshold", breakdown_r_threshold_ohm)?;
        if knots.len() < 3 {
            return Err(Error::InsufficientData(format!(
                "thickness model needs >= 3 knots, got {}",
                knots.len()
            )));
        }
        let mut offending = Vec::new();
        for w in knots.windows(2) {
            if !(w[1].0 > w[0].0 && w[1].1 < w[0].1) {
                offending.push(format!(
                    "knot (log10 C {}, log10 h {}) followed by ({}, {})",
                    w[0].0, w[0].1, w[1].0, w[1].1
                ));
            }
        }
        if !offending.is_empty() {
            return Err(Error::NonMonotone(offending));
        }
        let curve = MonotoneCubic::new(
            knots.iter().map(|k| k.0).collect(),
            knots.iter().map(|k| k.1).collect(),
        )?;
        Ok(Self {
            knots,
            breakdown_r_threshold_ohm,
            provenance: Vec::new(),
            curve,
        })
    }

    pub fn knots(&self) -> &[(f64, f64)] {
        &self.knots
    }

    pub fn breakdown_r_threshold_ohm(&self) -> f64 {
        self.breakdown_r_threshold_ohm
    }

    pub fn with_threshold(mut self, threshold_ohm: f64) -> Result<Self> {
        self.breakdown_r_threshold_ohm = ensure_positive("breakdown threshold", threshold_ohm)?;
        Ok(self)
    }

    /// Film thickness range covered by the knots, in meters.
    pub fn h_range(&self) -> (f64, f64) {
        let thin = 10f64.powf(self.knots[self.knots.len() - 1].1);
        let thick = 10f64.powf(self.knots[0].1);
        (thin, thick)
    }

    /// Capacitance range covered by the knots, in farads.
    pub fn c_range(&self) -> (f64, f64) {
        (
            10f64.powf(self.knots[0].0),
            10f64.powf(self.knots[self.knots.len() - 1].0),
        )
    }

    /// Film thickness from measured resistance and capacitance.
    pub fn thickness_from_rc(&self, r_ohm: f64, c_farad: f64) -> ThicknessEstimate {
        let (h_min, _) = self.h_range();
        if r_ohm.is_nan() || r_ohm < self.breakdown_r_threshold_ohm || !(c_farad.is_finite() && c_farad > 0.0) {
            return ThicknessEstimate {
                h_m: h_min,
                regime: Regime::Boundary,
                extrapolated: true,
            };
        }
        let regime = if r_ohm >= self.breakdown_r_threshold_ohm * FULL_FILM_RATIO {
            Regime::FullFilm
        } else {
            Regime::Mixed
        };
        let x = c_farad.log10();
        let (lo, hi) = self.curve.domain();
        let (left, right) = self.curve.end_secants();
        let n = self.knots.len();
        let (log_h, extrapolated) = if x < lo {
            (self.knots[0].1 + left * (x - lo), true)
        } else if x > hi {
            (self.knots[n - 1].1 + right * (x - hi), true)
        } else {
            (self.curve.eval(x), false)
        };
        ThicknessEstimate {
            h_m: 10f64.powf(log_h),
            regime,
            extrapolated,
        }
    }
}

/// Builds the thickness model with the default breakdown threshold of 10·R0.
pub fn build_thickness_model(records: &[CalibrationRecord], r0_ohm: f64) -> Result<ThicknessModel> {
    build_thickness_model_with(records, r0_ohm, DEFAULT_BREAKDOWN_FACTOR)
}

pub fn build_thickness_model_with(
    records: &[CalibrationRecord],
    r0_ohm: f64,
    breakdown_factor: f64,
) -> Result<ThicknessModel> {
    ensure_positive("stationary resistance", r0_ohm)?;
    ensure_positive("breakdown factor", breakdown_factor)?;
    let threshold = r0_ohm * breakdown_factor;

    let mut film: Vec<CalibrationRecord> = records
        .iter()
        .copied()
        .filter(|r| r.r_ohm >= threshold)
        .collect();
    for r in &film {
        ensure_positive("record capacitance", r.c_farad)?;
        ensure_positive("record film thickness", r.h_m)?;
    }
    if film.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "need >= 3 film-bearing records (R >= {threshold} ohm), got {}",
            film.len()
        )));
    }
    film.sort_by(|a, b| a.c_farad.total_cmp(&b.c_farad));

    // Group near-duplicate capacitances; aggregate by geometric mean.
    let mut groups: Vec<Vec<CalibrationRecord>> = Vec::new();
    for rec in &film {
        match groups.last_mut() {
            Some(g) if rec.c_farad <= g[0].c_farad * (1.0 + KNOT_MERGE_REL) => g.push(*rec),
            _ => groups.push(vec![*rec]),
        }
    }
    let knots: Vec<(f64, f64)> = groups
        .iter()
        .map(|g| {
            let n = g.len() as f64;
            (
                g.iter().map(|r| r.c_farad.log10()).sum::<f64>() / n,
                g.iter().map(|r| r.h_m.log10()).sum::<f64>() / n,
            )
        })
        .collect();

    let mut offending = Vec::new();
    for (i, w) in knots.windows(2).enumerate() {
        if w[1].1 >= w[0].1 {
            let describe = |g: &[CalibrationRecord]| {
                g.iter()
                    .map(|r| format!("[{}: R={} ohm, C={:e} F, h={:e} m]", r.op, r.r_ohm, r.c_farad, r.h_m))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            offending.push(format!(
                "{} then {}",
                describe(&groups[i]),
                describe(&groups[i + 1])
            ));
        }
    }
    if !offending.is_empty() {
        return Err(Error::NonMonotone(offending));
    }

    let mut model = ThicknessModel::from_knots(knots, threshold)?;
    model.provenance = records.to_vec();
    Ok(model)
}

pub fn thickness_from_rc(m: &ThicknessModel, r_ohm: f64, c_farad: f64) -> ThicknessEstimate {
    m.thickness_from_rc(r_ohm, c_farad)
}

#[derive(Debug)]
pub struct FamilyMember {
    pub h_m: f64,
    pub spectrum: Result<Spectrum>,
    /// `h_m` lies inside the thickness range covered by the calibration.
    pub within_calibration: bool,
}

/// Frequency response of the ball-on-disc equivalent circuit over a range of film
/// thicknesses, at a fixed breakdown ratio `alpha` (R1 = R0/α, open circuit at α = 0).
pub fn model_response_family(
    m: &ThicknessModel,
    geometry: &BallOnDiscGeometry,
    alpha: f64,
    h_grid: &[f64],
    grid: &FrequencyGrid,
) -> Vec<FamilyMember> {
    let (thin, thick) = m.h_range();
    h_grid
        .iter()
        .map(|&h| {
            let spectrum = geometry
                .with_film(h, alpha)
                .and_then(|model| model.network())
                .and_then(|net| sweep(&net, grid));
            FamilyMember {
                h_m: h,
                spectrum,
                within_calibration: h >= thin * (1.0 - 1e-12) && h <= thick * (1.0 + 1e-12),
            }
        })
        .collect()
}

/// `count` log-spaced values from `lo` to `hi` inclusive.
pub fn logspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count)
            .map(|i| lo * (hi / lo).powf(i as f64 / (count - 1) as f64))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::HertzContact;
    use crate::fit::{fit_model, FitConfig, ModelKind};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const BALL: f64 = 9.525e-3;

    fn geometry() -> BallOnDiscGeometry {
        let hz = HertzContact::new(20.0, BALL, 2.26e11).unwrap();
        BallOnDiscGeometry::from_hertz(&hz, BALL, 2.2, 10.0).unwrap()
    }

    fn op(t: f64, u: f64) -> OperatingPoint {
        OperatingPoint::new(t, u, 20.0).unwrap()
    }

    fn forward_records(hs: &[f64], temperature: f64) -> Vec<CalibrationRecord> {
        let g = geometry();
        hs.iter()
            .enumerate()
            .map(|(i, &h)| CalibrationRecord {
                op: op(temperature, 100.0 * (i + 1) as f64),
                r_ohm: 1e8,
                c_farad: g.with_film(h, 0.0).unwrap().total_capacitance().unwrap(),
                h_m: h,
            })
            .collect()
    }

    fn fitted(o: OperatingPoint, r: f64, c: f64) -> FittedPoint {
        FittedPoint { op: o, r_ohm: r, c_farad: c }
    }

    #[test]
    fn merge_scales_matched_rows() {
        let fits: Vec<FittedPoint> = [2500.0, 2000.0, 1300.0]
            .iter()
            .map(|&u| fitted(op(60.0, u), 1e7, 1e-11))
            .collect();
        let utfi: Vec<(OperatingPoint, f64)> = [2500.0, 2000.0, 1300.0]
            .iter()
            .map(|&u| (op(60.2, u * 1.005), u * 1e-10))
            .collect();
        let out = merge_datasets(&fits, &utfi, 0.9468).unwrap();
        assert_eq!(out.records.len(), 3);
        for (rec, (_, h)) in out.records.iter().zip(&utfi) {
            assert_relative_eq!(rec.h_m, h * 0.9468, max_relative = 1e-15);
        }
        assert!(out.unmatched_fits.is_empty() && out.unmatched_utfi.is_empty());

        let out = merge_datasets(&fits, &utfi, 1.0).unwrap();
        assert_eq!(out.records[0].h_m, utfi[0].1);
    }

    #[test]
    fn merge_reports_unmatched_and_ambiguous() {
        let fits = vec![fitted(op(60.0, 2400.0), 1e7, 1e-11)];
        let utfi = vec![(op(60.0, 2500.0), 1e-7)];
        let out = merge_datasets(&fits, &utfi, 1.0).unwrap();
        assert!(out.records.is_empty());
        assert_eq!(out.unmatched_fits, vec![op(60.0, 2400.0)]);
        assert_eq!(out.unmatched_utfi, vec![op(60.0, 2500.0)]);

        let fits = vec![fitted(op(60.0, 1000.0), 1e7, 1e-11)];
        let utfi = vec![(op(60.0, 1000.0), 1e-7), (op(60.3, 1004.0), 1.1e-7)];
        assert!(matches!(merge_datasets(&fits, &utfi, 1.0), Err(Error::AmbiguousJoin(_))));

        let fits = vec![fitted(op(60.0, 1000.0), 1e7, 1e-11), fitted(op(60.1, 1001.0), 1e7, 1e-11)];
        let utfi = vec![(op(60.0, 1000.0), 1e-7)];
        assert!(matches!(merge_datasets(&fits, &utfi, 1.0), Err(Error::AmbiguousJoin(_))));

        // Temperature beyond 0.5 C does not join.
        let fits = vec![fitted(op(60.0, 1000.0), 1e7, 1e-11)];
        let utfi = vec![(op(60.6, 1000.0), 1e-7)];
        assert!(merge_datasets(&fits, &utfi, 1.0).unwrap().records.is_empty());
    }

    #[test]
    fn model_interpolates_training_knots() {
        let hs = [10e-9, 30e-9, 100e-9, 300e-9];
        let recs = forward_records(&hs, 60.0);
        let m = build_thickness_model(&recs, 10.0).unwrap();
        assert_eq!(m.knots().len(), 4);
        assert_eq!(m.breakdown_r_threshold_ohm(), 100.0);
        for r in &recs {
            let est = m.thickness_from_rc(1e8, r.c_farad);
            assert_relative_eq!(est.h_m, r.h_m, max_relative = 1e-12);
            assert!(!est.extrapolated);
            assert_eq!(est.regime, Regime::FullFilm);
        }
        // Between two knots.
        let c_mid = (recs[1].c_farad * recs[2].c_farad).sqrt();
        let est = m.thickness_from_rc(1e8, c_mid);
        assert!(est.h_m < 100e-9 && est.h_m > 30e-9);
    }

    #[test]
    fn query_branches() {
        let recs = forward_records(&[10e-9, 30e-9, 100e-9, 300e-9], 40.0);
        let m = build_thickness_model(&recs, 10.0).unwrap();
        let b = m.thickness_from_rc(10.0, recs[2].c_farad);
        assert_eq!(b.regime, Regime::Boundary);
        assert!(b.extrapolated);
        assert_relative_eq!(b.h_m, 10e-9, max_relative = 1e-12);

        let hi = m.thickness_from_rc(1e8, recs[0].c_farad * 3.0);
        assert!(hi.extrapolated);
        assert!(hi.h_m < 10e-9);
        let lo = m.thickness_from_rc(1e8, recs[3].c_farad * 0.9);
        assert!(lo.extrapolated);
        assert!(lo.h_m > 300e-9);

        assert_eq!(m.thickness_from_rc(1e3, recs[2].c_farad).regime, Regime::Mixed);
    }

    #[test]
    fn duplicate_knots_merge_and_temperature_is_ignored() {
        let hs = [10e-9, 30e-9, 100e-9, 300e-9];
        let single = build_thickness_model(&forward_records(&hs, 40.0), 10.0).unwrap();
        let mut both = forward_records(&hs, 40.0);
        both.extend(forward_records(&hs, 80.0));
        let merged = build_thickness_model(&both, 10.0).unwrap();
        assert_eq!(merged.knots(), single.knots());

        let relabeled = build_thickness_model(&forward_records(&hs, 80.0), 10.0).unwrap();
        assert_eq!(relabeled.knots(), single.knots());

        // Near-duplicate C: h aggregated by geometric mean.
        let mut recs = forward_records(&hs, 40.0);
        let mut twin = recs[1];
        twin.c_farad *= 1.001;
        twin.h_m = 40e-9;
        recs.push(twin);
        let m = build_thickness_model(&recs, 10.0).unwrap();
        assert_eq!(m.knots().len(), 4);
        assert_relative_eq!(10f64.powf(m.knots()[2].1), (30e-9f64 * 40e-9).sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn build_rejects_bad_data() {
        let mut recs = forward_records(&[10e-9, 30e-9, 100e-9, 300e-9], 40.0);
        recs[1].h_m = 500e-9;
        match build_thickness_model(&recs, 10.0) {
            Err(Error::NonMonotone(list)) => assert!(!list.is_empty()),
            other => panic!("{other:?}"),
        }
        let few = forward_records(&[10e-9, 30e-9], 40.0);
        assert!(matches!(build_thickness_model(&few, 10.0), Err(Error::InsufficientData(_))));
        // Boundary-regime records do not count towards the knots.
        let mut recs = forward_records(&[10e-9, 30e-9, 100e-9], 40.0);
        recs[0].r_ohm = 10.0;
        assert!(build_thickness_model(&recs, 10.0).is_err());
    }

    #[test]
    fn family_examples() {
        let g = geometry();
        let recs = forward_records(&[1e-9, 10e-9, 100e-9, 1e-6], 60.0);
        let m = build_thickness_model(&recs, 10.0).unwrap();
        let grid = FrequencyGrid::default();

        let hs = logspace(0.1e-9, 1000e-9, 5);
        let fam = model_response_family(&m, &g, 1e-5, &hs, &grid);
        assert_eq!(fam.len(), 5);
        assert!(!fam[0].within_calibration && fam[2].within_calibration);
        let probe = 20;
        let mags: Vec<f64> = fam
            .iter()
            .map(|f| f.spectrum.as_ref().unwrap().samples()[probe].z.norm())
            .collect();
        assert!(mags.windows(2).all(|w| w[1] > w[0]), "{mags:?}");

        assert!(model_response_family(&m, &g, 1e-5, &[], &grid).is_empty());

        let bad = model_response_family(&m, &g, 1e-5, &[-1.0, 1e-7], &grid);
        assert!(bad[0].spectrum.is_err());
        assert!(bad[1].spectrum.is_ok());
    }

    #[test]
    fn family_round_trips_through_fitter() {
        let g = geometry();
        let hs = [10e-9, 30e-9, 100e-9, 300e-9];
        let alpha = 1e-5;
        let recs: Vec<CalibrationRecord> = hs
            .iter()
            .map(|&h| {
                let model = g.with_film(h, alpha).unwrap();
                CalibrationRecord {
                    op: op(60.0, 1.0),
                    r_ohm: model.resistance().unwrap().ohms(),
                    c_farad: model.total_capacitance().unwrap(),
                    h_m: h,
                }
            })
            .collect();
        let m = build_thickness_model(&recs, 10.0).unwrap();
        let fam = model_response_family(&m, &g, alpha, &[hs[2]], &FrequencyGrid::default());
        let s = fam[0].spectrum.as_ref().unwrap();
        let fit = fit_model(s, ModelKind::ParallelRc, &FitConfig::default()).unwrap();
        assert!((fit.params.c1_farad / recs[2].c_farad - 1.0).abs() < 1e-3);
    }

    proptest! {
        #[test]
        fn thickness_non_increasing_in_c(qs in prop::collection::vec(-12.5f64..-9.0, 1000)) {
            let recs = forward_records(&[1e-9, 5e-9, 20e-9, 100e-9, 400e-9, 1e-6], 60.0);
            let m = build_thickness_model(&recs, 10.0).unwrap();
            let mut qs = qs;
            qs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let hs: Vec<f64> = qs.iter().map(|&x| m.thickness_from_rc(1e8, 10f64.powf(x)).h_m).collect();
            for w in hs.windows(2) {
                prop_assert!(w[1] <= w[0] * (1.0 + 1e-12));
            }
        }

        #[test]
        fn merge_never_invents_rows(
            fit_speeds in prop::collection::vec(0u32..20, 0..15),
            utfi_speeds in prop::collection::vec(0u32..20, 0..15),
        ) {
            let mut fs: Vec<u32> = fit_speeds;
            fs.sort();
            fs.dedup();
            let mut us: Vec<u32> = utfi_speeds;
            us.sort();
            us.dedup();
            let fits: Vec<FittedPoint> = fs.iter().map(|&u| fitted(op(60.0, 100.0 * (u + 1) as f64), 1e7, 1e-11)).collect();
            let utfi: Vec<(OperatingPoint, f64)> = us.iter().map(|&u| (op(60.0, 100.0 * (u + 1) as f64), 1e-7)).collect();
            let out = merge_datasets(&fits, &utfi, 0.9468).unwrap();
            prop_assert!(out.records.len() <= fits.len().min(utfi.len()));
            prop_assert_eq!(out.records.len() + out.unmatched_fits.len(), fits.len());
            prop_assert_eq!(out.records.len() + out.unmatched_utfi.len(), utfi.len());
        }
    }
}
