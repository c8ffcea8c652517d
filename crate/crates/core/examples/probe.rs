//! Scratch measurements (removed before release).

use kp_core::field::{field_f, field_f_fd};
use kp_core::grid::GridSpec;
use kp_core::rogue::{detect_transient, time_series_max, trough_points};
use kp_core::solution::{EvalPoint, SolitonMode, SolutionSpec, SpectralMode};
use kp_core::verification::{kp_residual, residual_scan, soliton_limit_check};

fn specs() -> Vec<(&'static str, SolutionSpec)> {
    let pi = std::f64::consts::PI;
    vec![
        (
            "fig01",
            SolutionSpec::trigonometric(vec![SpectralMode::new(0.5, -0.1, 0.0, 0.0, 0.0)]).unwrap(),
        ),
        (
            "fig07",
            SolutionSpec::trigonometric(vec![SpectralMode::new(0.65, -0.1, 0.105 * pi, 0.0, 0.0)])
                .unwrap(),
        ),
        (
            "fig12",
            SolutionSpec::trigonometric(vec![SpectralMode::new(3.0, 0.0, 0.55 * pi, 0.0, 0.0)])
                .unwrap(),
        ),
        (
            "fig14",
            SolutionSpec::hyperbolic(vec![SpectralMode::new(1.0, 0.05, 0.6, 0.0, 0.0)]).unwrap(),
        ),
        (
            "soliton",
            SolutionSpec::soliton(vec![SolitonMode::real(0.5, 0.5, 1.0)]).unwrap(),
        ),
        (
            "fig19",
            SolutionSpec::hyperbolic(vec![
                SpectralMode::new(0.5, 0.2, 0.6, 0.0, 0.0),
                SpectralMode::new(1.0, 0.5, -0.7, 0.0, 0.0),
            ])
            .unwrap(),
        ),
        (
            "trigN2",
            SolutionSpec::trigonometric(vec![
                SpectralMode::new(0.5, -0.1, 0.2, 0.0, 0.0),
                SpectralMode::new(0.8, 0.3, -0.4, 0.1, 0.2),
            ])
            .unwrap(),
        ),
    ]
}

fn main() {
    let which = std::env::args().nth(1).unwrap_or_else(|| "all".into());

    if which == "pointwise" || which == "all" {
        println!("== pointwise residuals (formula validity) ==");
        for (name, spec) in specs() {
            let mut shown = 0;
            for &(x, y, t) in &[
                (1.3_f64, 0.7_f64, 0.2_f64),
                (-2.0, 1.5, -0.4),
                (3.0, -2.0, 0.5),
                (0.9, 3.0, 0.0),
            ] {
                let pt = EvalPoint::new(x, y, t);
                let f = match field_f(&spec, &pt) {
                    Ok(f) => f,
                    Err(_) => continue,
                };
                if f.abs() > 30.0 {
                    continue;
                }
                let r1 = kp_residual(&spec, &pt, 1e-2);
                let r2 = kp_residual(&spec, &pt, 5e-3);
                if let (Ok(r1), Ok(r2)) = (r1, r2) {
                    println!(
                        "{name:8} ({x:5.1},{y:5.1},{t:5.1}) f={f:10.4} r(1e-2)={r1:10.3e} r(5e-3)={r2:10.3e} ratio={:6.2}",
                        r1 / r2
                    );
                    shown += 1;
                }
                if shown >= 3 {
                    break;
                }
            }
        }
    }

    if which == "fdcheck" || which == "all" {
        println!("== analytic vs fd field (spot) ==");
        for (name, spec) in specs() {
            let pt = EvalPoint::new(1.7, 0.9, 0.1);
            if let (Ok(f), Ok(fd)) = (field_f(&spec, &pt), field_f_fd(&spec, &pt, 1e-3)) {
                println!("{name:8} f={f:13.6e} fd={fd:13.6e} rel={:9.2e}", (f - fd).abs() / f.abs().max(1.0));
            }
        }
    }

    if which == "scan" || which == "all" {
        println!("== residual_scan table [-10,10]^2 200x200, exclusion 0.5 ==");
        for (name, spec) in specs() {
            if name == "fig19" || name == "trigN2" {
                continue;
            }
            let grid = GridSpec::centered(10.0, 200).unwrap();
            let t0 = std::time::Instant::now();
            let r1 = residual_scan(&spec, &grid, 0.0, 1e-2, 0.5);
            let r2 = residual_scan(&spec, &grid, 0.0, 5e-3, 0.5);
            let r3 = residual_scan(&spec, &grid, 0.0, 2.5e-3, 0.5);
            println!(
                "{name:8} max(1e-2)={:9.3e} max(5e-3)={:9.3e} max(2.5e-3)={:9.3e} | r12={:6.2} r23={:6.2} | norm={:9.3e} rel={:9.3e} checked={} excl={} [{:?}]",
                r1.max_residual,
                r2.max_residual,
                r3.max_residual,
                r1.max_residual / r2.max_residual,
                r2.max_residual / r3.max_residual,
                r2.normalization,
                r2.max_residual / r2.normalization,
                r2.points_checked,
                r2.points_excluded,
                t0.elapsed()
            );
        }
    }

    if which == "fig19scan" || which == "all" {
        println!("== fig19 N=2 residual scan ==");
        let spec = specs().into_iter().find(|(n, _)| *n == "fig19").unwrap().1;
        let grid = GridSpec::centered(10.0, 200).unwrap();
        let t0 = std::time::Instant::now();
        let r1 = residual_scan(&spec, &grid, 0.0, 1e-2, 0.5);
        let r2 = residual_scan(&spec, &grid, 0.0, 5e-3, 0.5);
        println!(
            "fig19 max(1e-2)={:9.3e} max(5e-3)={:9.3e} ratio={:6.2} norm={:9.3e} rel={:9.3e} checked={} [{:?}]",
            r1.max_residual,
            r2.max_residual,
            r1.max_residual / r2.max_residual,
            r2.normalization,
            r2.max_residual / r2.normalization,
            r2.points_checked,
            t0.elapsed()
        );
    }

    if which == "rogue" || which == "all" {
        println!("== fig19 rogue time series ==");
        let spec = specs().into_iter().find(|(n, _)| *n == "fig19").unwrap().1;
        let grid = GridSpec::centered(15.0, 151).unwrap();
        let times: Vec<f64> = (0..101).map(|i| -5.0 + i as f64 * 0.1).collect();
        let t0 = std::time::Instant::now();
        let series = time_series_max(&spec, &grid, &times);
        println!("series took {:?}", t0.elapsed());
        for (i, &t) in series.times.iter().enumerate() {
            if i % 5 == 0 || series.max_value[i] > 2.0 * series.max_value[0] {
                println!(
                    "t={t:6.2} max={:10.4} at ({:7.3},{:7.3}) crests={}",
                    series.max_value[i],
                    series.max_location[i].0,
                    series.max_location[i].1,
                    series.crest_points[i].len()
                );
            }
        }
        match detect_transient(&series, 2.0, 3.0) {
            Ok(events) => {
                for e in &events {
                    println!(
                        "EVENT t={:5.2} amp={:8.3} bg={:8.3} ratio={:6.2} tops={:?}",
                        e.t_peak, e.amplitude, e.background, e.prominence_ratio, e.tops
                    );
                }
                println!("events: {}", events.len());
            }
            Err(e) => println!("detect error: {e}"),
        }
        for t in [-1.15, -0.67, -0.5, -0.3, -0.2] {
            match trough_points(&spec, &grid, t) {
                Ok(p) => {
                    let d = ((p[0].0 - p[1].0).powi(2) + (p[0].1 - p[1].1).powi(2)).sqrt();
                    println!("troughs t={t:6.2}: {:?} separation={d:7.3}", p);
                }
                Err(e) => println!("troughs t={t:6.2}: error {e}"),
            }
        }
    }

    if which == "limit" || which == "all" {
        println!("== soliton degeneration (fig1 mode) ==");
        let mode = SpectralMode::new(0.5, -0.1, 0.0, 0.0, 0.0);
        let probes = [
            EvalPoint::new(1.0, 0.5, 0.0),
            EvalPoint::new(-2.0, 1.0, 0.3),
            EvalPoint::new(0.5, -1.5, -0.2),
            EvalPoint::new(3.0, 2.0, 0.1),
        ];
        match soliton_limit_check(&mode, &[0.2, 0.1, 0.05, 0.025], &probes) {
            Ok(samples) => {
                for s in &samples {
                    println!(
                        "eps={:6.3} max_err={:10.4e} min|det|={:10.3e} ok={}",
                        s.eps, s.max_error, s.min_abs_det, s.conditioning_ok
                    );
                }
            }
            Err(e) => println!("limit error: {e}"),
        }
        // Also nonzero offsets, to see the limit's phase behavior.
        let mode2 = SpectralMode::new(0.5, -0.1, 0.3, 0.4, 0.2);
        println!("-- mode with chi=0.3 gamma=0.4 rho=0.2 --");
        if let Ok(samples) = soliton_limit_check(&mode2, &[0.2, 0.1, 0.05, 0.025], &probes) {
            for s in &samples {
                println!("eps={:6.3} max_err={:10.4e}", s.eps, s.max_error);
            }
        }
    }
}
