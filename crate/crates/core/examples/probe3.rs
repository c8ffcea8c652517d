//! Scratch: fig19 raw grid extremes (removed before release).

use kp_core::field::field_f_grid;
use kp_core::grid::GridSpec;
use kp_core::solution::{SolutionSpec, SpectralMode};

fn main() {
    let spec = SolutionSpec::hyperbolic(vec![
        SpectralMode::new(0.5, 0.2, 0.6, 0.0, 0.0),
        SpectralMode::new(1.0, 0.5, -0.7, 0.0, 0.0),
    ])
    .unwrap();
    let grid = GridSpec::centered(15.0, 151).unwrap();
    println!("t      gridmax   at            #>20  #>100  masked   min(finite)");
    let mut t = -5.0;
    while t <= 5.001 {
        let f = field_f_grid(&spec, &grid, t);
        let mut max = f64::NEG_INFINITY;
        let mut arg = (0usize, 0usize);
        let mut n20 = 0;
        let mut n100 = 0;
        let mut minv = f64::INFINITY;
        for iy in 0..grid.ny {
            for ix in 0..grid.nx {
                if f.is_masked(ix, iy) {
                    continue;
                }
                let v = f.value(ix, iy);
                if v > max {
                    max = v;
                    arg = (ix, iy);
                }
                if v > 20.0 {
                    n20 += 1;
                }
                if v > 100.0 {
                    n100 += 1;
                }
                minv = minv.min(v);
            }
        }
        println!(
            "{t:5.2} {max:10.3} ({:7.2},{:7.2}) {n20:5} {n100:5} {:6} {minv:12.1}",
            grid.x_at(arg.0),
            grid.y_at(arg.1),
            f.masked_count()
        );
        t += 0.25;
    }
}
