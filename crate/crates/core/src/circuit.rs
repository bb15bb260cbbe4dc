//! Circuit elements, composable networks and their frequency response.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::calibration::OperatingPoint;
use crate::error::{ensure_positive, Error, Result};

/// Frequency range of the potentiostat, 10 µHz to 2 MHz.
pub const DEFAULT_FREQUENCY_LIMITS: (f64, f64) = (1e-5, 2e6);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementKind {
    Resistor,
    Capacitor,
    Inductor,
    /// Semi-infinite diffusion element; `value` is the Warburg coefficient in Ω·s^-1/2.
    Warburg,
}

/// A single two-terminal element with a strictly positive value in SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircuitElement {
    kind: ElementKind,
    value: f64,
}

impl CircuitElement {
    pub fn new(kind: ElementKind, value: f64) -> Result<Self> {
        ensure_positive("element value", value)?;
        Ok(Self { kind, value })
    }

    pub fn kind(&self) -> ElementKind {
        self.kind
    }

    pub fn value(&self) -> f64 {
        self.value
    }
}

/// Complex impedance of a single element at angular frequency `omega` (rad/s).
pub fn element_impedance(e: &CircuitElement, omega: f64) -> Result<Complex64> {
    ensure_positive("angular frequency", omega)?;
    let v = e.value;
    Ok(match e.kind {
        ElementKind::Resistor => Complex64::new(v, 0.0),
        ElementKind::Capacitor => Complex64::new(0.0, -1.0 / (omega * v)),
        ElementKind::Inductor => Complex64::new(0.0, omega * v),
        ElementKind::Warburg => {
            // A/sqrt(w) + A/(j sqrt(w)) = A/sqrt(w) * (1 - j)
            let m = v / omega.sqrt();
            Complex64::new(m, -m)
        }
    })
}

/// Tree of elements under series and parallel combination.
#[derive(Debug, Clone, PartialEq)]
pub enum CircuitNetwork {
    Leaf(CircuitElement),
    Series(Vec<CircuitNetwork>),
    Parallel(Vec<CircuitNetwork>),
}

impl CircuitNetwork {
    pub fn resistor(ohms: f64) -> Result<Self> {
        CircuitElement::new(ElementKind::Resistor, ohms).map(Self::Leaf)
    }

    pub fn capacitor(farads: f64) -> Result<Self> {
        CircuitElement::new(ElementKind::Capacitor, farads).map(Self::Leaf)
    }

    pub fn inductor(henries: f64) -> Result<Self> {
        CircuitElement::new(ElementKind::Inductor, henries).map(Self::Leaf)
    }

    pub fn warburg(coefficient: f64) -> Result<Self> {
        CircuitElement::new(ElementKind::Warburg, coefficient).map(Self::Leaf)
    }

    pub fn series(children: Vec<CircuitNetwork>) -> Result<Self> {
        if children.len() < 2 {
            return Err(Error::InvalidNetwork(format!(
                "series node needs at least 2 children, got {}",
                children.len()
            )));
        }
        Ok(Self::Series(children))
    }

    pub fn parallel(children: Vec<CircuitNetwork>) -> Result<Self> {
        if children.len() < 2 {
            return Err(Error::InvalidNetwork(format!(
                "parallel node needs at least 2 children, got {}",
                children.len()
            )));
        }
        Ok(Self::Parallel(children))
    }

    /// Resistor R1 in parallel with capacitor C1.
    pub fn parallel_rc(r1: f64, c1: f64) -> Result<Self> {
        Self::parallel(vec![Self::resistor(r1)?, Self::capacitor(c1)?])
    }

    /// Parallel RC in series with a second resistor R2.
    pub fn parallel_rc_series_r(r1: f64, c1: f64, r2: f64) -> Result<Self> {
        Self::series(vec![Self::parallel_rc(r1, c1)?, Self::resistor(r2)?])
    }

    /// Randles-type cell: C1 in parallel with R1 + Warburg.
    pub fn randles(r1: f64, c1: f64, aw: f64) -> Result<Self> {
        Self::parallel(vec![
            Self::series(vec![Self::resistor(r1)?, Self::warburg(aw)?])?,
            Self::capacitor(c1)?,
        ])
    }

    /// Impedance at angular frequency `omega`.
    pub fn impedance(&self, omega: f64) -> Result<Complex64> {
        match self {
            Self::Leaf(e) => element_impedance(e, omega),
            Self::Series(children) => {
                self.check_arity(children)?;
                children
                    .iter()
                    .try_fold(Complex64::new(0.0, 0.0), |acc, c| Ok(acc + c.impedance(omega)?))
            }
            Self::Parallel(children) => {
                self.check_arity(children)?;
                let y = children.iter().try_fold(Complex64::new(0.0, 0.0), |acc, c| {
                    Ok::<_, Error>(acc + c.impedance(omega)?.inv())
                })?;
                if y.norm() == 0.0 || !y.is_finite() {
                    return Err(Error::Singular);
                }
                Ok(y.inv())
            }
        }
    }

    fn check_arity(&self, children: &[CircuitNetwork]) -> Result<()> {
        // Variants are public, so hand-built nodes bypass the constructors.
        if children.len() < 2 {
            return Err(Error::InvalidNetwork(
                "series/parallel node with fewer than 2 children".into(),
            ));
        }
        Ok(())
    }
}

pub fn network_impedance(n: &CircuitNetwork, omega: f64) -> Result<Complex64> {
    n.impedance(omega)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridSpacing {
    Logarithmic,
    Linear,
    Explicit,
}

/// Strictly monotone list of positive frequencies in hertz.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    points: Vec<f64>,
    spacing: GridSpacing,
}

impl FrequencyGrid {
    /// Log-spaced grid from `lo` to `hi` inclusive with `points_per_decade` samples per decade.
    pub fn logarithmic(lo: f64, hi: f64, points_per_decade: f64) -> Result<Self> {
        Self::logarithmic_with_limits(lo, hi, points_per_decade, DEFAULT_FREQUENCY_LIMITS)
    }

    pub fn logarithmic_with_limits(
        lo: f64,
        hi: f64,
        points_per_decade: f64,
        limits: (f64, f64),
    ) -> Result<Self> {
        ensure_positive("lowest frequency", lo)?;
        ensure_positive("highest frequency", hi)?;
        ensure_positive("points per decade", points_per_decade)?;
        if hi <= lo {
            return Err(Error::InvalidGrid(format!(
                "highest frequency {hi} must exceed lowest {lo}"
            )));
        }
        let decades = (hi / lo).log10();
        let intervals = ((decades * points_per_decade).round() as usize).max(1);
        let points = (0..=intervals)
            .map(|i| {
                if i == intervals {
                    hi
                } else {
                    lo * 10f64.powf(decades * i as f64 / intervals as f64)
                }
            })
            .collect();
        Self::build(points, GridSpacing::Logarithmic, limits)
    }

    pub fn linear(lo: f64, hi: f64, count: usize) -> Result<Self> {
        ensure_positive("lowest frequency", lo)?;
        if count < 2 || hi <= lo {
            return Err(Error::InvalidGrid(format!(
                "linear grid needs count >= 2 and hi > lo (count {count}, lo {lo}, hi {hi})"
            )));
        }
        let step = (hi - lo) / (count - 1) as f64;
        let points = (0..count)
            .map(|i| if i == count - 1 { hi } else { lo + step * i as f64 })
            .collect();
        Self::build(points, GridSpacing::Linear, DEFAULT_FREQUENCY_LIMITS)
    }

    pub fn explicit(points: Vec<f64>) -> Result<Self> {
        Self::explicit_with_limits(points, DEFAULT_FREQUENCY_LIMITS)
    }

    pub fn explicit_with_limits(points: Vec<f64>, limits: (f64, f64)) -> Result<Self> {
        Self::build(points, GridSpacing::Explicit, limits)
    }

    fn build(points: Vec<f64>, spacing: GridSpacing, (min, max): (f64, f64)) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidGrid("grid is empty".into()));
        }
        for &f in &points {
            ensure_positive("frequency", f)?;
            // Relative slack absorbs rounding in the log-spaced endpoints.
            if f < min * (1.0 - 1e-12) || f > max * (1.0 + 1e-12) {
                return Err(Error::InvalidGrid(format!(
                    "frequency {f} Hz outside [{min}, {max}] Hz"
                )));
            }
        }
        check_strictly_monotone(&points).map_err(Error::InvalidGrid)?;
        Ok(Self { points, spacing })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn spacing(&self) -> GridSpacing {
        self.spacing
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

impl Default for FrequencyGrid {
    /// 1 Hz to 1 MHz, 10 points per decade.
    fn default() -> Self {
        Self::logarithmic(1.0, 1e6, 10.0).expect("default grid is valid")
    }
}

fn check_strictly_monotone(points: &[f64]) -> std::result::Result<(), String> {
    if points.len() < 2 {
        return Ok(());
    }
    let increasing = points[1] > points[0];
    for (i, w) in points.windows(2).enumerate() {
        let ok = if increasing { w[1] > w[0] } else { w[1] < w[0] };
        if !ok {
            return Err(format!(
                "frequencies not strictly monotone at index {}: {} then {}",
                i + 1,
                w[0],
                w[1]
            ));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub freq_hz: f64,
    pub z: Complex64,
}

impl Sample {
    pub fn new(freq_hz: f64, z: Complex64) -> Self {
        Self { freq_hz, z }
    }

    pub fn omega(&self) -> f64 {
        2.0 * PI * self.freq_hz
    }
}

/// Non-empty, frequency-monotone set of impedance samples.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    samples: Vec<Sample>,
    pub meta: Option<OperatingPoint>,
    pub amplitude_mv: Option<f64>,
}

impl Spectrum {
    pub fn new(samples: Vec<Sample>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidSpectrum("spectrum has no samples".into()));
        }
        for s in &samples {
            if !(s.freq_hz.is_finite() && s.freq_hz > 0.0) {
                return Err(Error::InvalidSpectrum(format!(
                    "frequency {} is not positive",
                    s.freq_hz
                )));
            }
            if !s.z.is_finite() {
                return Err(Error::InvalidSpectrum(format!(
                    "non-finite impedance at {} Hz",
                    s.freq_hz
                )));
            }
        }
        let freqs: Vec<f64> = samples.iter().map(|s| s.freq_hz).collect();
        check_strictly_monotone(&freqs).map_err(Error::InvalidSpectrum)?;
        Ok(Self {
            samples,
            meta: None,
            amplitude_mv: None,
        })
    }

    pub fn with_meta(mut self, op: OperatingPoint) -> Self {
        self.meta = Some(op);
        self
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn frequencies(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.freq_hz)
    }

    /// Copy with every impedance multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            samples: self
                .samples
                .iter()
                .map(|s| Sample::new(s.freq_hz, s.z * factor))
                .collect(),
            meta: self.meta,
            amplitude_mv: self.amplitude_mv,
        }
    }
}

/// Evaluates `n` at every grid point, preserving grid order.
pub fn sweep(n: &CircuitNetwork, grid: &FrequencyGrid) -> Result<Spectrum> {
    let samples = grid
        .points()
        .iter()
        .map(|&f| Ok(Sample::new(f, n.impedance(2.0 * PI * f)?)))
        .collect::<Result<Vec<_>>>()?;
    Spectrum::new(samples)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BodePoint {
    pub freq_hz: f64,
    pub magnitude_ohm: f64,
    pub phase_deg: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NyquistPoint {
    pub real_ohm: f64,
    pub neg_imag_ohm: f64,
}

/// Phase angle in degrees, in (-180, 180].
pub fn phase_degrees(z: Complex64) -> f64 {
    let p = z.im.atan2(z.re).to_degrees();
    if p <= -180.0 {
        p + 360.0
    } else {
        p
    }
}

pub fn to_bode(s: &Spectrum) -> Vec<BodePoint> {
    s.samples
        .iter()
        .map(|x| BodePoint {
            freq_hz: x.freq_hz,
            magnitude_ohm: x.z.norm(),
            phase_deg: phase_degrees(x.z),
        })
        .collect()
}

pub fn to_nyquist(s: &Spectrum) -> Vec<NyquistPoint> {
    s.samples
        .iter()
        .map(|x| NyquistPoint {
            real_ohm: x.z.re,
            neg_imag_ohm: -x.z.im,
        })
        .collect()
}

/// The -3 dB frequency of a parallel RC, 1/(2πRC) in hertz.
pub fn cutoff_frequency(r: f64, c: f64) -> Result<f64> {
    ensure_positive("resistance", r)?;
    ensure_positive("capacitance", c)?;
    Ok(1.0 / (2.0 * PI * r * c))
}

/// Multiplicative complex noise of relative magnitude `sigma`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NoiseSpec {
    pub sigma: f64,
}

impl NoiseSpec {
    pub fn new(sigma: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma >= 0.0) {
            return Err(Error::domain("noise sigma", "finite and >= 0", sigma));
        }
        Ok(Self { sigma })
    }
}

/// Sweep with seeded noise: each sample becomes `z·(1 + σ(g1 + j·g2))`, g unit normal.
pub fn synth_spectrum(
    n: &CircuitNetwork,
    grid: &FrequencyGrid,
    noise: NoiseSpec,
    seed: u64,
) -> Result<Spectrum> {
    let clean = sweep(n, grid)?;
    if noise.sigma == 0.0 {
        return Ok(clean);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = clean
        .samples
        .iter()
        .map(|s| {
            let g1: f64 = StandardNormal.sample(&mut rng);
            let g2: f64 = StandardNormal.sample(&mut rng);
            Sample::new(
                s.freq_hz,
                s.z * Complex64::new(1.0 + noise.sigma * g1, noise.sigma * g2),
            )
        })
        .collect();
    Spectrum::new(samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn element_examples() {
        let r = CircuitElement::new(ElementKind::Resistor, 100.0).unwrap();
        assert_eq!(element_impedance(&r, 7.3).unwrap(), Complex64::new(100.0, 0.0));

        let c = CircuitElement::new(ElementKind::Capacitor, 1e-6).unwrap();
        let z = element_impedance(&c, 1e6).unwrap();
        assert_relative_eq!(z.re, 0.0);
        assert_relative_eq!(z.im, -1.0, max_relative = 1e-15);

        let w = CircuitElement::new(ElementKind::Warburg, 10.0).unwrap();
        let z = element_impedance(&w, 4.0).unwrap();
        assert_eq!(z, Complex64::new(5.0, -5.0));
        assert_relative_eq!(phase_degrees(z), -45.0);

        let l = CircuitElement::new(ElementKind::Inductor, 2e-3).unwrap();
        assert_eq!(element_impedance(&l, 1e3).unwrap(), Complex64::new(0.0, 2.0));
    }

    #[test]
    fn element_rejects_bad_inputs() {
        assert!(CircuitElement::new(ElementKind::Resistor, 0.0).is_err());
        assert!(CircuitElement::new(ElementKind::Capacitor, -1.0).is_err());
        let r = CircuitElement::new(ElementKind::Resistor, 1.0).unwrap();
        assert!(matches!(element_impedance(&r, 0.0), Err(Error::Domain { .. })));
        assert!(element_impedance(&r, -3.0).is_err());
    }

    #[test]
    fn network_examples() {
        let rc = CircuitNetwork::parallel_rc(1000.0, 1e-6).unwrap();
        let z = rc.impedance(1000.0).unwrap();
        assert!(rel(z, Complex64::new(500.0, -500.0)) < 1e-14);

        let rcr = CircuitNetwork::parallel_rc_series_r(1000.0, 1e-6, 100.0).unwrap();
        let dc = rcr.impedance(1e-6).unwrap();
        assert!(rel(dc, Complex64::new(1100.0, 0.0)) < 1e-6);
        let hf = rcr.impedance(1e9).unwrap();
        assert!(rel(hf, Complex64::new(100.0, 0.0)) < 1e-3);
    }

    #[test]
    fn arity_enforced() {
        let r = CircuitNetwork::resistor(1.0).unwrap();
        assert!(CircuitNetwork::series(vec![r.clone()]).is_err());
        assert!(CircuitNetwork::parallel(vec![]).is_err());
        let hand_built = CircuitNetwork::Parallel(vec![r]);
        assert!(matches!(
            hand_built.impedance(1.0),
            Err(Error::InvalidNetwork(_))
        ));
    }

    #[test]
    fn inductor_capacitor_resonance_is_singular() {
        // L and C in parallel at resonance cancel admittance exactly for these values.
        let tank = CircuitNetwork::parallel(vec![
            CircuitNetwork::inductor(1.0).unwrap(),
            CircuitNetwork::capacitor(1.0).unwrap(),
        ])
        .unwrap();
        assert!(matches!(tank.impedance(1.0), Err(Error::Singular)));
    }

    #[test]
    fn sweep_examples() {
        let r = CircuitNetwork::resistor(10.0).unwrap();
        let grid = FrequencyGrid::explicit(vec![1.0, 10.0, 100.0]).unwrap();
        let s = sweep(&r, &grid).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.samples().iter().all(|x| x.z == Complex64::new(10.0, 0.0)));

        assert!(FrequencyGrid::explicit(vec![]).is_err());

        let rc = CircuitNetwork::parallel_rc(1000.0, 1e-6).unwrap();
        let grid = FrequencyGrid::logarithmic(1.0, 1e6, 10.0).unwrap();
        assert_eq!(grid.len(), 61);
        let s = sweep(&rc, &grid).unwrap();
        for (x, &f) in s.samples().iter().zip(grid.points()) {
            let w = 2.0 * PI * f;
            let direct = 1000.0 / Complex64::new(1.0, w * 1000.0 * 1e-6);
            assert!(rel(x.z, direct) < 1e-13);
        }
        let mags: Vec<f64> = s.samples().iter().map(|x| x.z.norm()).collect();
        assert!(mags.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn grid_validation() {
        assert!(FrequencyGrid::explicit(vec![1.0, 1.0]).is_err());
        assert!(FrequencyGrid::explicit(vec![1.0, 3.0, 2.0]).is_err());
        assert!(FrequencyGrid::explicit(vec![3.0, 2.0, 1.0]).is_ok());
        assert!(FrequencyGrid::explicit(vec![1e7]).is_err());
        assert!(FrequencyGrid::explicit_with_limits(vec![1e7], (1.0, 1e9)).is_ok());
        let g = FrequencyGrid::default();
        assert_eq!(g.points()[0], 1.0);
        assert_eq!(*g.points().last().unwrap(), 1e6);
        let lin = FrequencyGrid::linear(10.0, 100.0, 10).unwrap();
        assert_eq!(lin.len(), 10);
        assert_eq!(lin.spacing(), GridSpacing::Linear);
    }

    #[test]
    fn bode_examples() {
        let s = Spectrum::new(vec![
            Sample::new(1.0, Complex64::new(500.0, -500.0)),
            Sample::new(2.0, Complex64::new(10.0, 0.0)),
        ])
        .unwrap();
        let b = to_bode(&s);
        assert_relative_eq!(b[0].magnitude_ohm, 707.1067811865476, max_relative = 1e-15);
        assert_relative_eq!(b[0].phase_deg, -45.0);
        assert_eq!(b[1].magnitude_ohm, 10.0);
        assert_eq!(b[1].phase_deg, 0.0);

        let rc = CircuitNetwork::parallel_rc(1000.0, 1e-6).unwrap();
        let grid = FrequencyGrid::logarithmic(1e-3, 1e6, 10.0).unwrap();
        let b = to_bode(&sweep(&rc, &grid).unwrap());
        assert!(b.first().unwrap().phase_deg > -0.01);
        assert!(b.last().unwrap().phase_deg < -89.9);
        assert!(b.iter().all(|p| p.phase_deg <= 0.0));
    }

    #[test]
    fn phase_range_is_half_open() {
        assert_eq!(phase_degrees(Complex64::new(-1.0, -0.0)), 180.0);
        assert_eq!(phase_degrees(Complex64::new(-1.0, 0.0)), 180.0);
    }

    #[test]
    fn nyquist_examples() {
        let r = 1000.0;
        let rc = CircuitNetwork::parallel_rc(r, 1e-6).unwrap();
        let grid = FrequencyGrid::logarithmic(1e-4, 2e6, 10.0).unwrap();
        let ny = to_nyquist(&sweep(&rc, &grid).unwrap());
        assert_eq!(ny.len(), grid.len());
        for p in &ny {
            let d = ((p.real_ohm - r / 2.0).powi(2) + p.neg_imag_ohm.powi(2)).sqrt() - r / 2.0;
            assert!(d.abs() < 1e-9 * r);
        }

        let rr = CircuitNetwork::resistor(42.0).unwrap();
        let ny = to_nyquist(&sweep(&rr, &grid).unwrap());
        assert!(ny.iter().all(|p| p.real_ohm == 42.0 && p.neg_imag_ohm == 0.0));

        let r2 = 100.0;
        let rcr = CircuitNetwork::parallel_rc_series_r(r, 1e-6, r2).unwrap();
        for p in to_nyquist(&sweep(&rcr, &grid).unwrap()) {
            let d = ((p.real_ohm - r2 - r / 2.0).powi(2) + p.neg_imag_ohm.powi(2)).sqrt() - r / 2.0;
            assert!(d.abs() < 1e-9 * r);
        }
    }

    #[test]
    fn cutoff_examples() {
        assert_relative_eq!(
            cutoff_frequency(1000.0, 1e-6).unwrap(),
            159.15494309189535,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            cutoff_frequency(1.0, 1.0).unwrap(),
            0.15915494309189535,
            max_relative = 1e-14
        );
        let fc = cutoff_frequency(1000.0, 1e-6).unwrap();
        let z = CircuitNetwork::parallel_rc(1000.0, 1e-6)
            .unwrap()
            .impedance(2.0 * PI * fc)
            .unwrap();
        assert_relative_eq!(z.norm(), 1000.0 / 2f64.sqrt(), max_relative = 1e-12);
        assert!(cutoff_frequency(0.0, 1.0).is_err());
        assert!(cutoff_frequency(1.0, -1.0).is_err());
    }

    #[test]
    fn synth_examples() {
        let rc = CircuitNetwork::parallel_rc(1000.0, 1e-6).unwrap();
        let grid = FrequencyGrid::default();
        let clean = sweep(&rc, &grid).unwrap();
        let zero = synth_spectrum(&rc, &grid, NoiseSpec::new(0.0).unwrap(), 9).unwrap();
        assert_eq!(zero, clean);

        let noise = NoiseSpec::new(0.01).unwrap();
        let a = synth_spectrum(&rc, &grid, noise, 42).unwrap();
        let b = synth_spectrum(&rc, &grid, noise, 42).unwrap();
        assert_eq!(a, b);
        let c = synth_spectrum(&rc, &grid, noise, 43).unwrap();
        assert_ne!(a, c);

        // Relative deviation (z_noisy - z)/z = σ(g1 + j g2): pool both components.
        let devs: Vec<f64> = a
            .samples()
            .iter()
            .zip(clean.samples())
            .flat_map(|(n, c)| {
                let d = (n.z - c.z) / c.z;
                [d.re, d.im]
            })
            .collect();
        let mean = devs.iter().sum::<f64>() / devs.len() as f64;
        let var =
            devs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (devs.len() - 1) as f64;
        let sd = var.sqrt();
        assert!((0.005..=0.02).contains(&sd), "sample std {sd}");

        assert!(NoiseSpec::new(-0.1).is_err());
    }
}
