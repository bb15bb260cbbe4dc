//! Acceptance suite. Prints one PASS/FAIL line per criterion, then fails if any did.

use std::f64::consts::PI;
use std::io::Write;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tribo_eis::calibration::{build_thickness_model, logspace, merge_datasets, CalibrationRecord, OperatingPoint};
use tribo_eis::contact::{invert_ball_on_disc, BallOnDiscGeometry, CylinderModel, HertzContact, VACUUM_PERMITTIVITY};
use tribo_eis::ehd::{dowson_hamrock_hc, material_conversion_factor, EhdInputs};
use tribo_eis::fit::{classify_resistance, fit_model, loglog_slope, FitConfig, ModelKind, Regime, RegimeThresholds};
use tribo_eis::io;
use tribo_eis::{
    cutoff_frequency, network_impedance, sweep, synth_spectrum, CircuitNetwork, Complex64, FrequencyGrid,
    NoiseSpec, Sample, Spectrum,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    10f64.powf(rng.random_range(lo.log10()..hi.log10()))
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn mtm_geometry() -> BallOnDiscGeometry {
    let hertz = HertzContact::new(20.0, 9.525e-3, 2.26e11).unwrap();
    BallOnDiscGeometry::from_hertz(&hertz, 9.525e-3, 2.2, 10.0).unwrap()
}

fn c1_conversion_factor() -> Outcome {
    let f = material_conversion_factor(2.26e11, 1.17e11).map_err(|e| e.to_string())?;
    let rounded = (f * 100.0).round() / 100.0;
    if (f - 0.9468).abs() <= 0.0005 && rounded == 0.95 {
        Ok(format!("factor {f:.6}, rounds to {rounded}"))
    } else {
        Err(format!("factor {f}"))
    }
}

fn c2_closed_form() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let grid = FrequencyGrid::logarithmic(1.0, 1e6, 10.0).unwrap();
    assert_eq!(grid.len(), 61);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let r = log_uniform(&mut rng, 1.0, 1e9);
        let c = log_uniform(&mut rng, 1e-13, 1e-6);
        let r2 = log_uniform(&mut rng, 1e-2, 1e6);
        let rc = CircuitNetwork::parallel_rc(r, c).unwrap();
        let rcr = CircuitNetwork::parallel_rc_series_r(r, c, r2).unwrap();
        for &f in grid.points() {
            let w = 2.0 * PI * f;
            let expect = Complex64::new(r, 0.0) / Complex64::new(1.0, w * r * c);
            let got = network_impedance(&rc, w).unwrap();
            worst = worst.max((got - expect).norm() / expect.norm());
            let expect2 = expect + r2;
            let got2 = network_impedance(&rcr, w).unwrap();
            worst = worst.max((got2 - expect2).norm() / expect2.norm());
        }
    }
    if worst <= 1e-12 {
        Ok(format!("max rel err {worst:.2e} over 61 x 50 x 2"))
    } else {
        Err(format!("max rel err {worst:.3e}"))
    }
}

fn c3_cutoff() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let r = log_uniform(&mut rng, 1.0, 1e9);
        let c = log_uniform(&mut rng, 1e-13, 1e-6);
        let fc = cutoff_frequency(r, c).unwrap();
        let z = network_impedance(&CircuitNetwork::parallel_rc(r, c).unwrap(), 2.0 * PI * fc).unwrap();
        worst = worst.max(rel(z.norm(), r / 2f64.sqrt()));
    }
    if worst <= 1e-9 {
        Ok(format!("max rel err {worst:.2e} over 100 draws"))
    } else {
        Err(format!("max rel err {worst:.3e}"))
    }
}

fn c4_warburg() -> Outcome {
    let mut worst_slope: f64 = 0.0;
    let mut worst_phase: f64 = 0.0;
    for aw in [1e-3, 1.0, 37.5, 1e5] {
        let net = CircuitNetwork::warburg(aw).unwrap();
        for lo_exp in -5..6 {
            let lo = 10f64.powi(lo_exp);
            let grid = FrequencyGrid::logarithmic_with_limits(lo, 10.0 * lo, 10.0, (1e-6, 1e7)).unwrap();
            let s = sweep(&net, &grid).unwrap();
            worst_slope = worst_slope.max((loglog_slope(s.samples()) + 0.5).abs());
            for x in s.samples() {
                worst_phase = worst_phase.max((x.z.arg().to_degrees() + 45.0).abs());
            }
        }
    }
    if worst_slope <= 1e-6 && worst_phase <= 1e-9 {
        Ok(format!("slope err {worst_slope:.1e}, phase err {worst_phase:.1e} deg"))
    } else {
        Err(format!("slope err {worst_slope:.3e}, phase err {worst_phase:.3e}"))
    }
}

fn c5_fit_recovery() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cfg = FitConfig::default();
    let noise = NoiseSpec::new(0.01).unwrap();
    let mut ok = 0;
    let mut misses = Vec::new();
    for i in 0..100u64 {
        let r = log_uniform(&mut rng, 10.0, 1e8);
        let c = log_uniform(&mut rng, 1e-12, 1e-8);
        let fc = cutoff_frequency(r, c).unwrap();
        let grid = FrequencyGrid::logarithmic_with_limits(fc * 1e-3, fc * 1e3, 10.0, (fc * 1e-3, fc * 1e3)).unwrap();
        let s = synth_spectrum(&CircuitNetwork::parallel_rc(r, c).unwrap(), &grid, noise, 1000 + i).unwrap();
        match fit_model(&s, ModelKind::ParallelRc, &cfg) {
            Ok(f) if rel(f.params.r1_ohm, r) <= 0.03 && rel(f.params.c1_farad, c) <= 0.03 => ok += 1,
            Ok(f) => misses.push(format!("#{i} R {r:.3e}->{:.3e} C {c:.3e}->{:.3e}", f.params.r1_ohm, f.params.c1_farad)),
            Err(e) => misses.push(format!("#{i}: {e}")),
        }
    }
    if ok >= 95 {
        Ok(format!("{ok}/100 within 3%"))
    } else {
        Err(format!("{ok}/100 within 3%; {}", misses.join("; ")))
    }
}

fn c6_ball_on_disc_round_trip() -> Outcome {
    let g = mtm_geometry();
    let mut worst_h: f64 = 0.0;
    let mut worst_a: f64 = 0.0;
    for &h in &logspace(1e-9, 1e-6, 20) {
        for &alpha in &logspace(0.01, 1.0, 20) {
            let m = g.with_film(h, alpha).map_err(|e| e.to_string())?;
            let c = m.total_capacitance().map_err(|e| e.to_string())?;
            let r = m.resistance().map_err(|e| e.to_string())?;
            let inv = invert_ball_on_disc(r, c, &g).map_err(|e| format!("h {h:e}, alpha {alpha}: {e}"))?;
            worst_h = worst_h.max(rel(inv.film_thickness_m, h));
            worst_a = worst_a.max(rel(inv.breakdown_ratio, alpha));
        }
    }
    if worst_h <= 1e-6 && worst_a <= 1e-6 {
        Ok(format!("max rel err h {worst_h:.1e}, alpha {worst_a:.1e} on 20x20"))
    } else {
        Err(format!("max rel err h {worst_h:.3e}, alpha {worst_a:.3e}"))
    }
}

fn c7_dowson_hamrock() -> Outcome {
    let base = EhdInputs {
        k_ellipticity: 1.9,
        reduced_radius_m: 9.525e-3,
        entrainment_speed_m_s: 0.5,
        viscosity_pa_s: 0.01,
        reduced_modulus_pa: 2.26e11,
        pressure_viscosity_coeff_per_pa: 2e-8,
        load_n: 20.0,
    };
    let h = dowson_hamrock_hc(&base).unwrap();
    let hu = dowson_hamrock_hc(&EhdInputs { entrainment_speed_m_s: 1.0, ..base }).unwrap();
    let hw = dowson_hamrock_hc(&EhdInputs { load_n: 40.0, ..base }).unwrap();
    let eu = (hu / h - 2f64.powf(0.68)).abs();
    let ew = (hw / h - 2f64.powf(-0.067)).abs();
    if eu <= 1e-12 && ew <= 1e-12 {
        Ok(format!("speed err {eu:.1e}, load err {ew:.1e}"))
    } else {
        Err(format!("speed err {eu:.3e}, load err {ew:.3e}"))
    }
}

fn c8_dawes_concentric() -> Outcome {
    let mut worst: f64 = 0.0;
    for (r1, r2, len, er) in [(1e-3, 2e-3, 0.1, 2.2), (5e-3, 5.001e-3, 1e-2, 1.0), (0.1, 3.0, 2.0, 80.0)] {
        let eps = er * VACUUM_PERMITTIVITY;
        let m = CylinderModel {
            inner_radius_m: r1,
            outer_radius_m: r2,
            eccentricity_m: 0.0,
            length_m: len,
            permittivity_f_per_m: eps,
        };
        let c = m.capacitance().map_err(|e| e.to_string())?;
        worst = worst.max(rel(c, 2.0 * PI * eps * len / (r2 / r1).ln()));
    }
    if worst <= 1e-12 {
        Ok(format!("max rel err {worst:.1e}"))
    } else {
        Err(format!("max rel err {worst:.3e}"))
    }
}

fn c9_pipeline() -> Outcome {
    let g = mtm_geometry();
    let alpha = 1e-5;
    let factor = 0.9468;
    let grid = FrequencyGrid::default();
    let noise = NoiseSpec::new(0.01).unwrap();
    let cfg = FitConfig::default();
    let hs = logspace(10e-9, 500e-9, 8);

    let mut fits = Vec::new();
    let mut utfi = Vec::new();
    for (i, &h) in hs.iter().enumerate() {
        let net = g.with_film(h, alpha).and_then(|m| m.network()).map_err(|e| e.to_string())?;
        let s = synth_spectrum(&net, &grid, noise, 90 + i as u64).map_err(|e| e.to_string())?;
        let f = fit_model(&s, ModelKind::ParallelRc, &cfg).map_err(|e| e.to_string())?;
        // Each thickness at its own speed, as an interferometer campaign would record it.
        let op = OperatingPoint::new(40.0, 100.0 * (i + 1) as f64, 20.0).unwrap();
        fits.push(tribo_eis::FittedPoint::from_fit(op, &f));
        utfi.push((op, h / factor));
    }
    let merged = merge_datasets(&fits, &utfi, factor).map_err(|e| e.to_string())?;
    if merged.records.len() != hs.len() {
        return Err(format!("joined {} of {}", merged.records.len(), hs.len()));
    }
    let model = build_thickness_model(&merged.records, 10.0).map_err(|e| e.to_string())?;

    let mut worst_train: f64 = 0.0;
    for (rec, &h) in merged.records.iter().zip(&hs) {
        let est = model.thickness_from_rc(rec.r_ohm, rec.c_farad);
        worst_train = worst_train.max(rel(est.h_m, h));
    }
    let mut worst_interp: f64 = 0.0;
    for w in hs.windows(2) {
        for t in [0.25, 0.5, 0.75] {
            let h = w[0] * (w[1] / w[0]).powf(t);
            let m = g.with_film(h, alpha).map_err(|e| e.to_string())?;
            let est = model.thickness_from_rc(m.resistance().unwrap().ohms(), m.total_capacitance().unwrap());
            if est.extrapolated {
                return Err(format!("query h {h:e} extrapolated"));
            }
            worst_interp = worst_interp.max(rel(est.h_m, h));
        }
    }
    if worst_train <= 0.005 && worst_interp <= 0.05 {
        Ok(format!("training err {:.3}%, interpolated err {:.2}%", worst_train * 100.0, worst_interp * 100.0))
    } else {
        Err(format!("training err {:.3}%, interpolated err {:.2}%", worst_train * 100.0, worst_interp * 100.0))
    }
}

fn c10_regime() -> Outcome {
    let t = RegimeThresholds::default();
    let low = classify_resistance(10.0, 10.0, &t);
    let high = classify_resistance(1e9, 10.0, &t);
    if low == Regime::Boundary && high == Regime::FullFilm {
        Ok("10 ohm -> Boundary, 1e9 ohm -> FullFilm".into())
    } else {
        Err(format!("10 ohm -> {low}, 1e9 ohm -> {high}"))
    }
}

fn simulate(dir: &Path, out: &str) -> Result<Vec<u8>, String> {
    let cfg = dir.join("mtm.cfg");
    let path = dir.join(out);
    let status = Command::new(env!("CARGO_BIN_EXE_tribo-eis"))
        .arg("simulate")
        .arg(&cfg)
        .arg(&path)
        .args(["--seed", "7", "--noise", "0.01"])
        .status()
        .map_err(|e| e.to_string())?;
    if !status.success() {
        return Err(format!("simulate exited with {status}"));
    }
    std::fs::read(&path).map_err(|e| e.to_string())
}

fn c11_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    std::fs::write(
        dir.path().join("mtm.cfg"),
        "ball_radius_m = 9.525e-3\nload_n = 20\nreduced_modulus_pa = 2.26e11\nepsilon_r = 2.2\nr0_ohm = 10\n",
    )
    .map_err(|e| e.to_string())?;
    let a = simulate(dir.path(), "a.csv")?;
    let b = simulate(dir.path(), "b.csv")?;
    if a != b || a.is_empty() {
        return Err("simulate output differs between runs".into());
    }

    // Random bit patterns across the full exponent range.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let val = |rng: &mut ChaCha8Rng| loop {
        let v = f64::from_bits(rng.random::<u64>() & !(1 << 63));
        if v.is_finite() && v > 0.0 {
            return v;
        }
    };
    let mut cases = 0;
    for _ in 0..50 {
        let mut f = val(&mut rng);
        let mut samples = Vec::new();
        for _ in 0..20 {
            f = f * (1.0 + rng.random::<f64>()) + f64::MIN_POSITIVE;
            if !f.is_finite() {
                break;
            }
            let re = val(&mut rng) * if rng.random() { 1.0 } else { -1.0 };
            samples.push(Sample::new(f, Complex64::new(re, -val(&mut rng))));
        }
        let s = Spectrum::new(samples).map_err(|e| e.to_string())?;
        let mut buf = Vec::new();
        io::write_spectrum(&mut buf, &s).unwrap();
        if io::read_spectrum(buf.as_slice()).map_err(|e| e.to_string())? != s {
            return Err("spectrum round trip changed values".into());
        }

        let records: Vec<CalibrationRecord> = (0..10)
            .map(|_| CalibrationRecord {
                op: OperatingPoint::new(rng.random_range(-20.0..200.0), val(&mut rng), val(&mut rng)).unwrap(),
                r_ohm: val(&mut rng),
                c_farad: val(&mut rng),
                h_m: val(&mut rng),
            })
            .collect();
        let mut buf = Vec::new();
        io::write_calibration(&mut buf, &records).unwrap();
        let back = io::read_calibration(buf.as_slice()).map_err(|e| e.to_string())?;
        let mut buf2 = Vec::new();
        io::write_calibration(&mut buf2, &back).unwrap();
        let same = back == records;
        if !same || buf != buf2 {
            return Err("calibration round trip changed values".into());
        }
        cases += 1;
    }
    Ok(format!("simulate byte-identical ({} bytes); {cases} spectrum + calibration round trips exact", a.len()))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("1 conversion factor", c1_conversion_factor, Duration::from_secs(1)),
        ("2 closed-form equivalence", c2_closed_form, Duration::from_secs(1)),
        ("3 -3 dB property", c3_cutoff, Duration::from_secs(1)),
        ("4 Warburg signature", c4_warburg, Duration::from_secs(1)),
        ("5 fit recovery", c5_fit_recovery, Duration::from_secs(30)),
        ("6 ball-on-disc round trip", c6_ball_on_disc_round_trip, Duration::from_secs(5)),
        ("7 Dowson-Hamrock scaling", c7_dowson_hamrock, Duration::from_secs(1)),
        ("8 Dawes concentric limit", c8_dawes_concentric, Duration::from_secs(1)),
        ("9 end-to-end pipeline", c9_pipeline, Duration::from_secs(60)),
        ("10 regime classification", c10_regime, Duration::from_secs(1)),
        ("11 determinism", c11_determinism, Duration::from_secs(1)),
    ];
    let mut out = std::io::stdout().lock();
    let mut failed = Vec::new();
    for (name, check, budget) in criteria {
        let t = Instant::now();
        let result = check();
        let dt = t.elapsed();
        let over = dt > budget;
        let (tag, msg) = match &result {
            Ok(m) if !over => ("PASS", m.clone()),
            Ok(m) => ("FAIL", format!("{m}; took {dt:.2?} > {budget:?}")),
            Err(m) => ("FAIL", m.clone()),
        };
        writeln!(out, "{tag} criterion {name}: {msg} [{dt:.2?}]").unwrap();
        if tag == "FAIL" {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
