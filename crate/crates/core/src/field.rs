//! The solution field f = 2 d^2/dx^2 ln det of the family matrix.
//!
//! The production path never differentiates numerically: with M the family
//! matrix and M', M'' its analytic x-derivatives,
//!
//!   d^2/dx^2 ln det M = tr(M^-1 M'') - tr((M^-1 M')^2)
//!
//! which equals d^2/dx^2 ln |det M| wherever det M != 0, independent of the
//! determinant's sign. A five-point central difference of ln |det| serves as
//! the independent oracle (`field_f_fd`).

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec;
use crate::grid::{GridSpec, ScalarField};
use crate::matrix::{
    family_determinant, matrix_x_derivatives3, singular_tolerance, soliton_x_derivatives,
};
use crate::solution::{EvalPoint, Family, SolutionSpec};

fn check_regular(spec: &SolutionSpec, pt: &EvalPoint) -> Result<()> {
    let (det, scale) = family_determinant(spec, pt);
    if det.abs() < singular_tolerance(scale, spec.len()) {
        return Err(Error::OnSingularSet { x: pt.x, y: pt.y, t: pt.t });
    }
    Ok(())
}

fn trace(m: &DMatrix<f64>) -> f64 {
    (0..m.nrows()).map(|i| m[(i, i)]).sum()
}

fn trace_product(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

fn trace_c(m: &DMatrix<Complex64>) -> Complex64 {
    (0..m.nrows()).map(|i| m[(i, i)]).sum()
}

fn trace_product_c(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> Complex64 {
    let n = a.nrows();
    let mut acc = Complex64::ZERO;
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

/// Evaluate f at one point via the analytic-derivative path.
pub fn field_f(spec: &SolutionSpec, pt: &EvalPoint) -> Result<f64> {
    check_regular(spec, pt)?;
    let nonfinite = || Error::NonFinite { x: pt.x, y: pt.y, t: pt.t };
    let f = match spec.family() {
        Family::Soliton => {
            let d = soliton_x_derivatives(spec, pt)?;
            let lu = d.a.clone().lu();
            let m1 = lu.solve(&d.ax).ok_or_else(nonfinite)?;
            let m2 = lu.solve(&d.axx).ok_or_else(nonfinite)?;
            // ln|det| = Re ln det, so the field is the real part.
            2.0 * (trace_c(&m2) - trace_product_c(&m1, &m1)).re
        }
        _ => {
            let d = matrix_x_derivatives3(spec, pt)?;
            let lu = d.k.clone().lu();
            let m1 = lu.solve(&d.kx).ok_or_else(nonfinite)?;
            let m2 = lu.solve(&d.kxx).ok_or_else(nonfinite)?;
            2.0 * (trace(&m2) - trace_product(&m1, &m1))
        }
    };
    if !f.is_finite() {
        return Err(nonfinite());
    }
    Ok(f)
}

/// Analytic x-derivative of f (third log-derivative of the determinant):
///
///   d^3/dx^3 ln det M = tr(M^-1 M''') - 3 tr(M^-1 M'' M^-1 M') + 2 tr((M^-1 M')^3)
pub fn field_f_x(spec: &SolutionSpec, pt: &EvalPoint) -> Result<f64> {
    check_regular(spec, pt)?;
    let nonfinite = || Error::NonFinite { x: pt.x, y: pt.y, t: pt.t };
    let fx = match spec.family() {
        Family::Soliton => {
            let d = soliton_x_derivatives(spec, pt)?;
            let lu = d.a.clone().lu();
            let m1 = lu.solve(&d.ax).ok_or_else(nonfinite)?;
            let m2 = lu.solve(&d.axx).ok_or_else(nonfinite)?;
            let m3 = lu.solve(&d.axxx).ok_or_else(nonfinite)?;
            let m1sq = &m1 * &m1;
            2.0 * (trace_c(&m3) - 3.0 * trace_product_c(&m2, &m1)
                + 2.0 * trace_product_c(&m1sq, &m1))
                .re
        }
        _ => {
            let d = matrix_x_derivatives3(spec, pt)?;
            let lu = d.k.clone().lu();
            let m1 = lu.solve(&d.kx).ok_or_else(nonfinite)?;
            let m2 = lu.solve(&d.kxx).ok_or_else(nonfinite)?;
            let m3 = lu.solve(&d.kxxx).ok_or_else(nonfinite)?;
            let m1sq = &m1 * &m1;
            2.0 * (trace(&m3) - 3.0 * trace_product(&m2, &m1) + 2.0 * trace_product(&m1sq, &m1))
        }
    };
    if !fx.is_finite() {
        return Err(nonfinite());
    }
    Ok(fx)
}

/// Finite-difference oracle for f: five-point central second difference of
/// ln |det| in x, O(h^4) accurate.
pub fn field_f_fd(spec: &SolutionSpec, pt: &EvalPoint, h: f64) -> Result<f64> {
    assert!(h > 0.0, "step must be positive");
    let n = spec.len();
    let mut logs = [0.0; 5];
    for (i, k) in (-2..=2).enumerate() {
        let q = EvalPoint::new(pt.x + k as f64 * h, pt.y, pt.t);
        let (det, scale) = family_determinant(spec, &q);
        if det.abs() < singular_tolerance(scale, n) {
            return Err(Error::OnSingularSet { x: q.x, y: q.y, t: q.t });
        }
        logs[i] = det.abs().ln();
    }
    Ok(2.0 * (-logs[0] + 16.0 * logs[1] - 30.0 * logs[2] + 16.0 * logs[3] - logs[4])
        / (12.0 * h * h))
}

/// Finite-difference x-derivative of f: fourth-order five-point stencil on
/// `field_f` samples. The default step is 1e-3.
pub fn field_f_x_fd(spec: &SolutionSpec, pt: &EvalPoint, h: f64) -> Result<f64> {
    assert!(h > 0.0, "step must be positive");
    let at = |k: f64| field_f(spec, &EvalPoint::new(pt.x + k * h, pt.y, pt.t));
    let (m2, m1, p1, p2) = (at(-2.0)?, at(-1.0)?, at(1.0)?, at(2.0)?);
    Ok((m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h))
}

/// Evaluate f over a grid at fixed t. Cells carrying the singular set are
/// masked rather than silently NaN: a cell is singular when its determinant
/// is below tolerance, or when the determinant changes sign toward a
/// 4-neighbor and this cell is the nearer side of the crossing. The second
/// rule marks the 1-pixel-wide trace of the singular curve, keeping the
/// diverging samples right next to it out of the finite data. Evaluation is
/// parallel over points and deterministic regardless of schedule.
pub fn field_f_grid(spec: &SolutionSpec, grid: &GridSpec, t: f64) -> ScalarField {
    let n = spec.len();
    let dets: Vec<(f64, f64)> = exec::map_indexed(grid.len(), |idx| {
        let (ix, iy) = grid.coords(idx);
        family_determinant(spec, &EvalPoint::new(grid.x_at(ix), grid.y_at(iy), t))
    });
    let near_curve = |idx: usize| -> bool {
        let (det, scale) = dets[idx];
        if det.abs() < singular_tolerance(scale, n) {
            return true;
        }
        let (ix, iy) = grid.coords(idx);
        let mut neighbors = [None; 4];
        if ix > 0 {
            neighbors[0] = Some(grid.index(ix - 1, iy));
        }
        if ix + 1 < grid.nx {
            neighbors[1] = Some(grid.index(ix + 1, iy));
        }
        if iy > 0 {
            neighbors[2] = Some(grid.index(ix, iy - 1));
        }
        if iy + 1 < grid.ny {
            neighbors[3] = Some(grid.index(ix, iy + 1));
        }
        neighbors.into_iter().flatten().any(|j| {
            let dj = dets[j].0;
            det * dj < 0.0
                && (det.abs() < dj.abs() || (det.abs() == dj.abs() && idx < j))
        })
    };
    let samples = exec::map_indexed(grid.len(), |idx| {
        if near_curve(idx) {
            return None;
        }
        let (ix, iy) = grid.coords(idx);
        let pt = EvalPoint::new(grid.x_at(ix), grid.y_at(iy), t);
        field_f(spec, &pt).ok()
    });
    ScalarField::from_results(*grid, t, samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solution::{SolitonMode, SpectralMode};
    use approx::assert_relative_eq;

    fn fig1_spec() -> SolutionSpec {
        SolutionSpec::trigonometric(vec![SpectralMode::new(0.5, -0.1, 0.0, 0.0, 0.0)]).unwrap()
    }

    fn single_soliton() -> SolutionSpec {
        SolutionSpec::soliton(vec![SolitonMode::real(0.5, 0.5, 1.0)]).unwrap()
    }

    #[test]
    fn zero_amplitude_soliton_field_is_zero() {
        let spec = SolutionSpec::soliton(vec![SolitonMode::real(0.5, 0.5, 0.0)]).unwrap();
        let pt = EvalPoint::new(1.2, -0.7, 0.3);
        assert_eq!(field_f(&spec, &pt).unwrap(), 0.0);
        assert_eq!(field_f_fd(&spec, &pt, 1e-3).unwrap(), 0.0);
    }

    #[test]
    fn single_soliton_closed_form() {
        // f = 2 d^2/dx^2 ln(1 + e^theta) with theta = x - t here, so
        // f = (1/2) sech^2(theta / 2) and the crest value is (p+q)^2/2.
        let spec = single_soliton();
        for (x, t) in [(0.0, 0.0), (1.3, 0.4), (-2.0, 1.0)] {
            let pt = EvalPoint::new(x, 0.6, t);
            let theta: f64 = x - t;
            let want = 0.5 / (theta / 2.0).cosh().powi(2);
            assert_relative_eq!(field_f(&spec, &pt).unwrap(), want, max_relative = 1e-12);
        }
        let crest = field_f(&spec, &EvalPoint::new(0.0, 0.0, 0.0)).unwrap();
        assert_relative_eq!(crest, 0.5, max_relative = 1e-14);
    }

    #[test]
    fn n1_trig_matches_closed_form() {
        // f = 2 (D'' D - D'^2) / D^2 with D = 2 lambda Upsilon - sin 2 Gamma.
        let spec = fig1_spec();
        let m = spec.spectral_modes()[0];
        for pt in [
            EvalPoint::new(2.0, 1.0, 0.0),
            EvalPoint::new(-3.0, 0.5, 0.7),
            EvalPoint::new(1.1, -4.0, -0.2),
        ] {
            let g = crate::phase::phase_gamma(&m, &pt, Family::Trigonometric, 1.0);
            let u = crate::phase::phase_upsilon(&m, &pt, Family::Trigonometric, 1.0);
            let l = m.lambda;
            let d = 2.0 * l * u - (2.0 * g).sin();
            let d1 = 2.0 * l * ((m.chi).cos() - (2.0 * g).cos());
            let d2 = 4.0 * l * l * (2.0 * g).sin();
            let want = 2.0 * (d2 * d - d1 * d1) / (d * d);
            let got = field_f(&spec, &pt).unwrap();
            assert_relative_eq!(got, want, max_relative = 1e-12);
        }
    }

    #[test]
    fn analytic_field_matches_fd_oracle() {
        let fig19 = SolutionSpec::hyperbolic(vec![
            SpectralMode::new(0.5, 0.2, 0.6, 0.0, 0.0),
            SpectralMode::new(1.0, 0.5, -0.7, 0.0, 0.0),
        ])
        .unwrap();
        for (spec, pt) in [
            (fig1_spec(), EvalPoint::new(2.0, 1.0, 0.0)),
            (single_soliton(), EvalPoint::new(0.8, -0.3, 0.2)),
            (fig19, EvalPoint::new(1.5, 2.0, 0.3)),
        ] {
            let f = field_f(&spec, &pt).unwrap();
            let fd = field_f_fd(&spec, &pt, 1e-3).unwrap();
            assert!(
                (f - fd).abs() / f.abs().max(1.0) < 1e-6,
                "f = {f}, fd = {fd}"
            );
        }
    }

    #[test]
    fn fd_oracle_converges_at_fourth_order() {
        let spec = fig1_spec();
        let pt = EvalPoint::new(2.0, 1.0, 0.0);
        let f = field_f(&spec, &pt).unwrap();
        let e1 = (field_f_fd(&spec, &pt, 1e-2).unwrap() - f).abs();
        let e2 = (field_f_fd(&spec, &pt, 5e-3).unwrap() - f).abs();
        let ratio = e1 / e2;
        assert!((8.0..32.0).contains(&ratio), "ratio = {ratio}");
    }

    #[test]
    fn analytic_fx_matches_fd_path() {
        let spec = fig1_spec();
        let pt = EvalPoint::new(1.3, 0.4, 0.2);
        let a = field_f_x(&spec, &pt).unwrap();
        let b = field_f_x_fd(&spec, &pt, 1e-3).unwrap();
        assert!((a - b).abs() / a.abs().max(1.0) < 1e-5, "a = {a}, b = {b}");
    }

    #[test]
    fn origin_of_fig1_is_singular() {
        let err = field_f(&fig1_spec(), &EvalPoint::new(0.0, 0.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::OnSingularSet { .. }));
    }

    #[test]
    fn grid_matches_pointwise_values() {
        let spec = single_soliton();
        let grid = GridSpec::new(1.0, 4.0, -1.0, 2.0, 3, 3).unwrap();
        let field = field_f_grid(&spec, &grid, 0.5);
        assert_eq!(field.masked_count(), 0);
        for iy in 0..3 {
            for ix in 0..3 {
                let pt = EvalPoint::new(grid.x_at(ix), grid.y_at(iy), 0.5);
                assert_eq!(field.value(ix, iy), field_f(&spec, &pt).unwrap());
            }
        }
    }

    #[test]
    fn zero_soliton_grid_is_all_zero_unmasked() {
        let spec = SolutionSpec::soliton(vec![SolitonMode::real(0.5, 0.5, 0.0)]).unwrap();
        let grid = GridSpec::centered(5.0, 8).unwrap();
        let field = field_f_grid(&spec, &grid, 0.0);
        assert_eq!(field.masked_count(), 0);
        assert!(field.values().iter().all(|&v| v == 0.0));
    }
}
