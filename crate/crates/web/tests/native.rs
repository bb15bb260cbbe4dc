use tribo_eis_web::{circuit_plots, contact_explorer, fit_synthetic};

fn svg_ok(s: &str) {
    roxmltree::Document::parse(s).unwrap();
}

#[test]
fn circuit_plots_render() {
    for (model, extra) in [("rc", 0.0), ("rc+r", 50.0), ("rc+w", 1e3)] {
        let p = circuit_plots(model, 1e4, 1e-9, extra, 1.0, 1e7).unwrap();
        svg_ok(&p.bode());
        svg_ok(&p.nyquist());
    }
}

#[test]
fn contact_explorer_reports_parts() {
    let c = contact_explorer(100.0, 1e-5, 9.525e-3, 20.0, 2.26e11, 2.2, 10.0).unwrap();
    assert!((c.hertz_radius_m() / 1.0816e-4 - 1.0).abs() < 1e-3);
    assert!((c.r_ohm() - 1e6).abs() < 1e-6);
    assert!(c.c_hertz_f() > 0.0 && c.c_surround_f() > 0.0 && c.cutoff_hz() > 0.0);
    svg_ok(&c.bode());

    let open = contact_explorer(100.0, 0.0, 9.525e-3, 20.0, 2.26e11, 2.2, 10.0).unwrap();
    assert_eq!(open.r_ohm(), -1.0);
    assert_eq!(open.cutoff_hz(), 0.0);
}

#[test]
fn synthetic_fit_recovers_inputs() {
    let f = fit_synthetic(2.5e5, 3e-11, 0.01, 1, "rc").unwrap();
    let summary = f.summary();
    let get = |k: &str| -> f64 {
        summary.lines().find_map(|l| l.strip_prefix(&format!("{k} = "))).unwrap().parse().unwrap()
    };
    assert!((get("r1_ohm") / 2.5e5 - 1.0).abs() < 0.03);
    assert!((get("c1_farad") / 3e-11 - 1.0).abs() < 0.03);
    assert!(summary.contains("converged = true"));
    svg_ok(&f.bode());
    svg_ok(&f.nyquist());
}
