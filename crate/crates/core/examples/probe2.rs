//! Scratch: N=2 validity checks (removed before release).

use kp_core::field::field_f;
use kp_core::solution::{EvalPoint, SolitonMode, SolutionSpec, SpectralMode};
use kp_core::verification::{kp_residual, soliton_pair_for_mode};

fn main() {
    // 1) Real 2-soliton: exact solution, analytic field path.
    let spec = SolutionSpec::soliton(vec![
        SolitonMode::real(0.5, 0.5, 1.0),
        SolitonMode::real(0.7, 0.7, 1.0),
    ])
    .unwrap();
    println!("== real 2-soliton residuals ==");
    for pt in [
        EvalPoint::new(0.3, 0.2, 0.1),
        EvalPoint::new(1.0, -1.0, 0.2),
        EvalPoint::new(-2.0, 1.5, -0.4),
    ] {
        let f = field_f(&spec, &pt).unwrap();
        let r1 = kp_residual(&spec, &pt, 1e-2).unwrap();
        let r2 = kp_residual(&spec, &pt, 5e-3).unwrap();
        println!("({:5.1},{:5.1},{:5.1}) f={f:9.4} r={r1:10.3e},{r2:10.3e} ratio={:6.2}", pt.x, pt.y, pt.t, r1/r2);
    }

    // 2) N=2 trig K-matrix vs 4-soliton eps-limit.
    let m1 = SpectralMode::new(0.5, -0.1, 0.2, 0.0, 0.0);
    let m2 = SpectralMode::new(0.8, 0.3, -0.4, 0.1, 0.2);
    let k2 = SolutionSpec::trigonometric(vec![m1, m2]).unwrap();
    println!("== N=2 trig vs 4-soliton limit ==");
    for pt in [
        EvalPoint::new(1.3, 0.7, 0.2),
        EvalPoint::new(-2.0, 1.5, -0.4),
        EvalPoint::new(4.0, -3.0, 0.3),
    ] {
        let fk = field_f(&k2, &pt).unwrap();
        print!("({:5.1},{:5.1},{:5.1}) K2={fk:12.6}", pt.x, pt.y, pt.t);
        for eps in [0.1, 0.05, 0.025, 0.0125, 0.00625] {
            let mut modes = soliton_pair_for_mode(&m1, eps);
            modes.extend(soliton_pair_for_mode(&m2, eps));
            let sol = SolutionSpec::soliton(modes).unwrap();
            match field_f(&sol, &pt) {
                Ok(fs) => print!("  e{eps}:{:10.3e}", (fs - fk).abs()),
                Err(e) => print!("  e{eps}:ERR({e:.20})"),
            }
        }
        println!();
    }

    // 3) N=1 trig fig12-mode vs 2-soliton limit (the failing scenario).
    let m12 = SpectralMode::new(3.0, 0.0, 0.55 * std::f64::consts::PI, 0.0, 0.0);
    let k12 = SolutionSpec::trigonometric(vec![m12]).unwrap();
    println!("== fig12 mode vs 2-soliton limit ==");
    for pt in [
        EvalPoint::new(1.3, 0.7, 0.2),
        EvalPoint::new(-2.0, 1.5, -0.4),
        EvalPoint::new(0.4, 2.0, 0.0),
    ] {
        let fk = field_f(&k12, &pt).unwrap();
        print!("({:5.1},{:5.1},{:5.1}) K={fk:12.6}", pt.x, pt.y, pt.t);
        for eps in [0.1, 0.05, 0.025, 0.0125] {
            let sol = SolutionSpec::soliton(soliton_pair_for_mode(&m12, eps)).unwrap();
            match field_f(&sol, &pt) {
                Ok(fs) => print!("  e{eps}:{:10.3e}", (fs - fk).abs()),
                Err(_) => print!("  e{eps}:ERR"),
            }
        }
        println!();
    }

    // 4) fig12 residual again, smaller h to find the plateau.
    println!("== fig12 residual vs h ==");
    for pt in [EvalPoint::new(1.3, 0.7, 0.2), EvalPoint::new(-2.0, 1.5, -0.4)] {
        print!("({:5.1},{:5.1},{:5.1})", pt.x, pt.y, pt.t);
        for h in [2e-2, 1e-2, 5e-3, 2.5e-3] {
            print!("  h{h}:{:10.3e}", kp_residual(&k12, &pt, h).unwrap());
        }
        println!();
    }
}
