//! Minimal SVG rendering of Bode and Nyquist plots.

use std::fmt::Write as _;

use crate::circuit::{to_bode, to_nyquist, Spectrum};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Markers,
    Line,
}

/// One curve on a plot.
#[derive(Debug, Clone)]
pub struct Series<'a> {
    pub label: &'a str,
    pub spectrum: &'a Spectrum,
    pub style: Style,
}

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];
const FONT: &str = "font-family=\"sans-serif\" font-size=\"11\"";

struct Frame {
    x: f64,
    y: f64,
    w: f64,
    h: f64,
    xr: (f64, f64),
    yr: (f64, f64),
}

impl Frame {
    fn px(&self, v: f64) -> f64 {
        self.x + (v - self.xr.0) / (self.xr.1 - self.xr.0) * self.w
    }
    fn py(&self, v: f64) -> f64 {
        self.y + self.h - (v - self.yr.0) / (self.yr.1 - self.yr.0) * self.h
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn range(vals: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = vals
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if hi - lo <= 1e-12 * lo.abs().max(1.0) {
        (lo - 0.5 * lo.abs().max(1.0), hi + 0.5 * hi.abs().max(1.0))
    } else {
        (lo, hi)
    }
}

fn nice_step(span: f64, target: usize) -> f64 {
    let raw = span / target as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let f = raw / mag;
    let m = if f < 1.5 {
        1.0
    } else if f < 3.5 {
        2.0
    } else if f < 7.5 {
        5.0
    } else {
        10.0
    };
    m * mag
}

fn linear_ticks(r: (f64, f64), target: usize) -> (f64, f64, Vec<f64>) {
    let step = nice_step(r.1 - r.0, target);
    let lo = (r.0 / step).floor() * step;
    let hi = (r.1 / step).ceil() * step;
    let n = ((hi - lo) / step).round() as usize;
    (lo, hi, (0..=n).map(|i| lo + i as f64 * step).collect())
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if v.abs() >= 1e4 || v.abs() < 1e-2 {
        format!("{v:.1e}")
    } else {
        let s = format!("{v:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_owned()
    }
}

fn axes(out: &mut String, f: &Frame, xticks: &[(f64, String)], yticks: &[(f64, String)], xlabel: &str, ylabel: &str) {
    let _ = writeln!(
        out,
        r##"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="#333"/>"##,
        f.x, f.y, f.w, f.h
    );
    for (v, label) in xticks {
        let x = f.px(*v);
        let _ = writeln!(
            out,
            r##"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="#ddd"/><text x="{x:.2}" y="{:.2}" text-anchor="middle" {FONT}>{}</text>"##,
            f.y,
            f.y + f.h,
            f.y + f.h + 14.0,
            escape(label)
        );
    }
    for (v, label) in yticks {
        let y = f.py(*v);
        let _ = writeln!(
            out,
            r##"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#ddd"/><text x="{:.2}" y="{:.2}" text-anchor="end" {FONT}>{}</text>"##,
            f.x,
            f.x + f.w,
            f.x - 4.0,
            y + 4.0,
            escape(label)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" {FONT}>{}</text>"#,
        f.x + f.w / 2.0,
        f.y + f.h + 30.0,
        escape(xlabel)
    );
    let (lx, ly) = (f.x - 50.0, f.y + f.h / 2.0);
    let _ = writeln!(
        out,
        r#"<text x="{lx:.2}" y="{ly:.2}" text-anchor="middle" transform="rotate(-90 {lx:.2} {ly:.2})" {FONT}>{}</text>"#,
        escape(ylabel)
    );
}

fn curve(out: &mut String, pts: &[(f64, f64)], style: Style, colour: &str) {
    match style {
        Style::Line => {
            let d = pts
                .iter()
                .map(|(x, y)| format!("{x:.2},{y:.2}"))
                .collect::<Vec<_>>()
                .join(" ");
            let _ = writeln!(out, r#"<polyline points="{d}" fill="none" stroke="{colour}" stroke-width="1.5"/>"#);
        }
        Style::Markers => {
            for (x, y) in pts {
                let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="2.5" fill="{colour}"/>"#);
            }
        }
    }
}

fn legend(out: &mut String, series: &[Series], x: f64, y: f64) {
    for (i, s) in series.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let yy = y + i as f64 * 14.0;
        let _ = writeln!(
            out,
            r#"<rect x="{x:.2}" y="{:.2}" width="10" height="10" fill="{colour}"/><text x="{:.2}" y="{:.2}" {FONT}>{}</text>"#,
            yy - 9.0,
            x + 14.0,
            yy,
            escape(s.label)
        );
    }
}

fn header(w: f64, h: f64) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    )
}

/// Bode plot: |Z| (log scale) and phase against log frequency.
pub fn bode_svg(series: &[Series]) -> String {
    let (w, h) = (640.0, 560.0);
    let mut out = header(w, h);
    let bodes: Vec<_> = series.iter().map(|s| to_bode(s.spectrum)).collect();

    let lf = range(bodes.iter().flatten().map(|p| p.freq_hz.log10()));
    let xr = (lf.0.floor(), lf.1.ceil());
    let xticks: Vec<(f64, String)> = (xr.0 as i32..=xr.1 as i32)
        .map(|e| (e as f64, format!("1e{e}")))
        .collect();

    let lm = range(bodes.iter().flatten().map(|p| p.magnitude_ohm.log10()));
    let (m0, m1, mt) = linear_ticks((lm.0, lm.1), 5);
    let mticks = mt.iter().map(|&e| (e, fmt_tick(10f64.powf(e)))).collect::<Vec<_>>();
    let mag = Frame {
        x: 80.0,
        y: 20.0,
        w: 520.0,
        h: 220.0,
        xr,
        yr: (m0, m1),
    };
    axes(&mut out, &mag, &xticks, &mticks, "frequency (Hz)", "|Z| (ohm)");

    let pr = range(bodes.iter().flatten().map(|p| p.phase_deg));
    let (p0, p1, pt) = linear_ticks(pr, 5);
    let pticks = pt.iter().map(|&v| (v, fmt_tick(v))).collect::<Vec<_>>();
    let phase = Frame {
        x: 80.0,
        y: 290.0,
        w: 520.0,
        h: 220.0,
        xr,
        yr: (p0, p1),
    };
    axes(&mut out, &phase, &xticks, &pticks, "frequency (Hz)", "phase (deg)");

    for (i, (s, b)) in series.iter().zip(&bodes).enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let m: Vec<_> = b
            .iter()
            .map(|p| (mag.px(p.freq_hz.log10()), mag.py(p.magnitude_ohm.log10())))
            .collect();
        curve(&mut out, &m, s.style, colour);
        let ph: Vec<_> = b
            .iter()
            .map(|p| (phase.px(p.freq_hz.log10()), phase.py(p.phase_deg)))
            .collect();
        curve(&mut out, &ph, s.style, colour);
    }
    legend(&mut out, series, 90.0, 545.0 - 14.0 * (series.len().saturating_sub(1)) as f64);
    out.push_str("</svg>\n");
    out
}

/// Nyquist plot (-Im Z against Re Z) with equal axis scaling.
pub fn nyquist_svg(series: &[Series]) -> String {
    let (w, h) = (600.0, 600.0);
    let mut out = header(w, h);
    let pts: Vec<_> = series.iter().map(|s| to_nyquist(s.spectrum)).collect();

    let xr = range(pts.iter().flatten().map(|p| p.real_ohm));
    let yr = range(pts.iter().flatten().map(|p| p.neg_imag_ohm));
    let xr = (xr.0.min(0.0), xr.1);
    let yr = (yr.0.min(0.0), yr.1);
    // Same span on both axes keeps semicircles round.
    let span = (xr.1 - xr.0).max(yr.1 - yr.0);
    let (x0, x1, xt) = linear_ticks((xr.0, xr.0 + span), 5);
    let (y0, y1, yt) = linear_ticks((yr.0, yr.0 + span), 5);
    let s = (x1 - x0).max(y1 - y0);
    let f = Frame {
        x: 80.0,
        y: 20.0,
        w: 480.0,
        h: 480.0,
        xr: (x0, x0 + s),
        yr: (y0, y0 + s),
    };
    let xticks = xt.iter().filter(|&&v| v <= x0 + s).map(|&v| (v, fmt_tick(v))).collect::<Vec<_>>();
    let yticks = yt.iter().filter(|&&v| v <= y0 + s).map(|&v| (v, fmt_tick(v))).collect::<Vec<_>>();
    axes(&mut out, &f, &xticks, &yticks, "Re Z (ohm)", "-Im Z (ohm)");
    for (i, (sr, p)) in series.iter().zip(&pts).enumerate() {
        let xy: Vec<_> = p.iter().map(|q| (f.px(q.real_ohm), f.py(q.neg_imag_ohm))).collect();
        curve(&mut out, &xy, sr.style, PALETTE[i % PALETTE.len()]);
    }
    legend(&mut out, series, 420.0, 40.0);
    out.push_str("</svg>\n");
    out
}
