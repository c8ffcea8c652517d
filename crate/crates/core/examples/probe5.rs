//! Scratch: convention comparison for fig19 (removed before release).

use kp_core::field::field_f_grid;
use kp_core::geometry::scan_singular_curve;
use kp_core::grid::GridSpec;
use kp_core::solution::{SolutionSpec, SpectralMode};

fn robust_series(spec: &SolutionSpec, grid: &GridSpec, times: &[f64], excl: f64) -> Vec<f64> {
    times
        .iter()
        .map(|&t| {
            let f = field_f_grid(spec, grid, t);
            let trace =
                scan_singular_curve(spec, &GridSpec { nx: grid.nx * 2, ny: grid.ny * 2, ..*grid }, t);
            let mut best = f64::NEG_INFINITY;
            for iy in 0..grid.ny {
                for ix in 0..grid.nx {
                    if f.is_masked(ix, iy) {
                        continue;
                    }
                    let (x, y) = (grid.x_at(ix), grid.y_at(iy));
                    if !trace.is_empty() && trace.distance(x, y) <= excl {
                        continue;
                    }
                    best = best.max(f.value(ix, iy));
                }
            }
            best
        })
        .collect()
}

fn main() {
    let grid = GridSpec::centered(15.0, 151).unwrap();
    let excl = (grid.dx().powi(2) + grid.dy().powi(2)).sqrt();
    let times: Vec<f64> = (0..41).map(|i| -5.0 + i as f64 * 0.25).collect();

    let variants: Vec<(&str, SolutionSpec)> = vec![
        (
            "formula-conv (gamma=0)",
            SolutionSpec::hyperbolic(vec![
                SpectralMode::new(0.5, 0.2, 0.6, 0.0, 0.0),
                SpectralMode::new(1.0, 0.5, -0.7, 0.0, 0.0),
            ])
            .unwrap(),
        ),
        (
            "recipe-conv (gamma=-chi/2)",
            SolutionSpec::hyperbolic(vec![
                SpectralMode::new(0.5, 0.2, 0.6, -0.3, 0.0),
                SpectralMode::new(1.0, 0.5, -0.7, 0.35, 0.0),
            ])
            .unwrap(),
        ),
        (
            "shifted +chi/2",
            SolutionSpec::hyperbolic(vec![
                SpectralMode::new(0.5, 0.2, 0.6, 0.3, 0.0),
                SpectralMode::new(1.0, 0.5, -0.7, -0.35, 0.0),
            ])
            .unwrap(),
        ),
    ];
    for (name, spec) in &variants {
        let series = robust_series(spec, &grid, &times, excl);
        println!("== {name} ==");
        for (i, &t) in times.iter().enumerate() {
            if t.abs() <= 2.1 || i % 4 == 0 {
                println!("  t={t:6.2} max={:9.3}", series[i]);
            }
        }
    }
}
