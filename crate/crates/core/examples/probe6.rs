//! Scratch: final pipeline readout for fig19 (removed before release).

use kp_core::grid::GridSpec;
use kp_core::rogue::{detect_transient, time_series_max, trough_points};
use kp_core::solution::{SolutionSpec, SpectralMode};

fn main() {
    let spec = SolutionSpec::hyperbolic(vec![
        SpectralMode::new(0.5, 0.2, 0.6, 0.0, 0.0),
        SpectralMode::new(1.0, 0.5, -0.7, 0.0, 0.0),
    ])
    .unwrap();
    for n in [101usize, 151] {
        let grid = GridSpec::centered(15.0, n).unwrap();
        let times: Vec<f64> = (0..101).map(|i| -5.0 + i as f64 * 0.1).collect();
        let t0 = std::time::Instant::now();
        let series = time_series_max(&spec, &grid, &times);
        println!("== grid {n}x{n} ({:?}) ==", t0.elapsed());
        match detect_transient(&series, 2.0, 3.0) {
            Ok(ev) => {
                for e in &ev {
                    println!(
                        "EVENT t={:5.2} amp={:8.3} bg={:6.3} ratio={:7.2} tops={:?}",
                        e.t_peak, e.amplitude, e.background, e.prominence_ratio, e.tops
                    );
                }
                println!("events: {}", ev.len());
            }
            Err(e) => println!("err {e}"),
        }
        // transient property: peak in |t|<=0.5 vs |t| in [3,5]
        let inner: f64 = series
            .times
            .iter()
            .zip(&series.max_value)
            .filter(|(&t, _)| t.abs() <= 0.5)
            .map(|(_, &v)| v)
            .fold(f64::NEG_INFINITY, f64::max);
        let outer: f64 = series
            .times
            .iter()
            .zip(&series.max_value)
            .filter(|(&t, _)| t.abs() >= 3.0)
            .map(|(_, &v)| v)
            .fold(f64::NEG_INFINITY, f64::max);
        println!("inner max {inner:.3} vs outer max {outer:.3}");
        for t in [-1.15, -0.67, -0.3] {
            match trough_points(&spec, &grid, t) {
                Ok(p) => {
                    let d = ((p[0].0 - p[1].0).powi(2) + (p[0].1 - p[1].1).powi(2)).sqrt();
                    println!("troughs t={t:6.2}: separation={d:7.3}");
                }
                Err(e) => println!("troughs t={t:6.2}: {e}"),
            }
        }
    }
}
