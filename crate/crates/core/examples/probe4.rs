//! Scratch: trace-distance structure of fig19 maxima (removed before release).

use kp_core::field::field_f_grid;
use kp_core::geometry::scan_singular_curve;
use kp_core::grid::GridSpec;
use kp_core::solution::{SolutionSpec, SpectralMode};

fn main() {
    let spec = SolutionSpec::hyperbolic(vec![
        SpectralMode::new(0.5, 0.2, 0.6, 0.0, 0.0),
        SpectralMode::new(1.0, 0.5, -0.7, 0.0, 0.0),
    ])
    .unwrap();
    let grid = GridSpec::centered(15.0, 151).unwrap();
    let excl = (grid.dx().powi(2) + grid.dy().powi(2)).sqrt();
    println!("exclusion radius = {excl:.4}");
    println!("t      robust_max  at              dist    #>20   (max over cells with dist>excl)");
    let mut t = -5.0_f64;
    while t <= 0.01 {
        let f = field_f_grid(&spec, &grid, t);
        let trace = scan_singular_curve(&spec, &GridSpec { nx: grid.nx * 2, ny: grid.ny * 2, ..grid }, t);
        let mut best = (f64::NEG_INFINITY, 0.0, 0.0, 0.0);
        let mut n20 = 0;
        for iy in 0..grid.ny {
            for ix in 0..grid.nx {
                if f.is_masked(ix, iy) {
                    continue;
                }
                let (x, y) = (grid.x_at(ix), grid.y_at(iy));
                let d = if trace.is_empty() { f64::INFINITY } else { trace.distance(x, y) };
                if d <= excl {
                    continue;
                }
                let v = f.value(ix, iy);
                if v > 20.0 {
                    n20 += 1;
                }
                if v > best.0 {
                    best = (v, x, y, d);
                }
            }
        }
        println!(
            "{t:6.2} {:10.3} ({:6.2},{:6.2}) {:7.3} {n20:4}",
            best.0, best.1, best.2, best.3
        );
        t += 0.25;
    }
}
