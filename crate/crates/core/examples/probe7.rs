//! Scratch: all local maxima at candidate peak frames (removed before release).

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
    for t in [-0.4_f64, -0.2, -0.1, 0.0] {
        let f = field_f_grid(&spec, &grid, t);
        // eligibility: no masked in 5x5
        let elig = |ix: usize, iy: usize| -> bool {
            if f.is_masked(ix, iy) {
                return false;
            }
            for dy in -2i64..=2 {
                for dx in -2i64..=2 {
                    let jx = ix as i64 + dx;
                    let jy = iy as i64 + dy;
                    if jx < 0 || jy < 0 || jx >= grid.nx as i64 || jy >= grid.ny as i64 {
                        continue;
                    }
                    if f.is_masked(jx as usize, jy as usize) {
                        return false;
                    }
                }
            }
            true
        };
        let mut crests: Vec<(f64, f64, f64)> = Vec::new();
        for iy in 1..grid.ny - 1 {
            for ix in 1..grid.nx - 1 {
                if !elig(ix, iy) {
                    continue;
                }
                let v = f.value(ix, iy);
                let higher = [(ix - 1, iy), (ix + 1, iy), (ix, iy - 1), (ix, iy + 1)]
                    .into_iter()
                    .any(|(jx, jy)| elig(jx, jy) && f.value(jx, jy) >= v);
                if !higher && v > 1.0 {
                    crests.push((v, grid.x_at(ix), grid.y_at(iy)));
                }
            }
        }
        crests.sort_by(|a, b| b.0.total_cmp(&a.0));
        crests.truncate(6);
        println!("t={t:5.2}:");
        for (v, x, y) in crests {
            println!("   {v:8.3} at ({x:6.2},{y:6.2})");
        }
    }
}
