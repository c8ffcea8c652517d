//! Verification that evaluated fields satisfy the KP equation, and the
//! soliton-to-breather degeneration check.
//!
//! The residual operator |d/dx [f_t + f_xxx + 6 f f_x] + 3 alpha^2 f_yy| is
//! measured with fourth-order central differences composed from samples of
//! the analytically evaluated field: a 7-point stencil for f_xxxx, 5-point
//! first/second stencils, and a 16-point cross stencil for the mixed f_tx.
//! Residuals are computed on the raw field, never on regularized values.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec;
use crate::field::field_f;
use crate::geometry::scan_singular_curve;
use crate::grid::GridSpec;
use crate::matrix::family_determinant;
use crate::solution::{EvalPoint, SolitonMode, SolutionSpec, SpectralMode};

/// Summary of a residual scan over a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub max_residual: f64,
    pub median_residual: f64,
    pub points_checked: usize,
    /// Points skipped as closer than the exclusion radius to the singular
    /// trace (or whose stencil touched it).
    pub points_excluded: usize,
    /// max |f| over the checked points, the scale residuals are judged
    /// against.
    pub normalization: f64,
    pub h: f64,
    pub exclusion_radius: f64,
    pub t: f64,
}

// First-derivative weights at offsets -2h, -h, h, 2h (divide by 12 h).
const D1: [(i32, f64); 4] = [(-2, 1.0), (-1, -8.0), (1, 8.0), (2, -1.0)];

/// KP residual at one point from fourth-order stencils with step `h`.
pub fn kp_residual(spec: &SolutionSpec, pt: &EvalPoint, h: f64) -> Result<f64> {
    assert!(h > 0.0, "step must be positive");
    let stencil_err = || Error::StencilOnSingularSet { x: pt.x, y: pt.y, t: pt.t };
    let sample = |i: i32, j: i32, k: i32| -> Result<f64> {
        let q = EvalPoint::new(
            pt.x + i as f64 * h,
            pt.y + j as f64 * h,
            pt.t + k as f64 * h,
        );
        field_f(spec, &q).map_err(|_| stencil_err())
    };

    let f0 = sample(0, 0, 0)?;

    // x-line samples cover f_x, f_xx and the 7-point f_xxxx.
    let mut fx_line = [0.0; 7]; // offsets -3h ..= 3h
    for (slot, i) in (-3..=3).enumerate() {
        fx_line[slot] = if i == 0 { f0 } else { sample(i, 0, 0)? };
    }
    let f_x = (fx_line[1] - 8.0 * fx_line[2] + 8.0 * fx_line[4] - fx_line[5]) / (12.0 * h);
    let f_xx = (-fx_line[1] + 16.0 * fx_line[2] - 30.0 * fx_line[3] + 16.0 * fx_line[4]
        - fx_line[5])
        / (12.0 * h * h);
    let f_xxxx = (-fx_line[0] + 12.0 * fx_line[1] - 39.0 * fx_line[2] + 56.0 * fx_line[3]
        - 39.0 * fx_line[4]
        + 12.0 * fx_line[5]
        - fx_line[6])
        / (6.0 * h.powi(4));

    let mut f_yy = -30.0 * f0;
    for (j, w) in [(-2, -1.0), (-1, 16.0), (1, 16.0), (2, -1.0)] {
        f_yy += w * sample(0, j, 0)?;
    }
    let f_yy = f_yy / (12.0 * h * h);

    // Mixed f_tx from the product of two first-derivative stencils.
    let mut f_tx = 0.0;
    for (i, wi) in D1 {
        for (k, wk) in D1 {
            f_tx += wi * wk * sample(i, 0, k)?;
        }
    }
    let f_tx = f_tx / (144.0 * h * h);

    let alpha2 = spec.alpha() * spec.alpha();
    Ok((f_tx + f_xxxx + 6.0 * (f_x * f_x + f0 * f_xx) + 3.0 * alpha2 * f_yy).abs())
}

/// Evaluate the residual at every grid point farther than `exclusion_radius`
/// from the singular trace. The trace is scanned internally at twice the
/// grid resolution so thin singular filaments are not missed.
pub fn residual_scan(
    spec: &SolutionSpec,
    grid: &GridSpec,
    t: f64,
    h: f64,
    exclusion_radius: f64,
) -> ResidualReport {
    let trace_grid = GridSpec {
        nx: grid.nx * 2,
        ny: grid.ny * 2,
        ..*grid
    };
    let trace = scan_singular_curve(spec, &trace_grid, t);

    let samples = exec::map_indexed(grid.len(), |idx| {
        let (ix, iy) = grid.coords(idx);
        let (x, y) = (grid.x_at(ix), grid.y_at(iy));
        if !trace.is_empty() && trace.distance(x, y) <= exclusion_radius {
            return (None, None);
        }
        let pt = EvalPoint::new(x, y, t);
        match (kp_residual(spec, &pt, h), field_f(spec, &pt)) {
            (Ok(r), Ok(f)) => (Some(r), Some(f.abs())),
            _ => (None, None),
        }
    });

    let mut residuals: Vec<f64> = samples.iter().filter_map(|(r, _)| *r).collect();
    let normalization = samples
        .iter()
        .filter_map(|(_, f)| *f)
        .fold(0.0_f64, f64::max);
    let points_checked = residuals.len();
    let points_excluded = grid.len() - points_checked;
    residuals.sort_unstable_by(f64::total_cmp);
    let max_residual = residuals.last().copied().unwrap_or(0.0);
    let median_residual = match points_checked {
        0 => 0.0,
        n if n % 2 == 1 => residuals[n / 2],
        n => 0.5 * (residuals[n / 2 - 1] + residuals[n / 2]),
    };
    ResidualReport {
        max_residual,
        median_residual,
        points_checked,
        points_excluded,
        normalization,
        h,
        exclusion_radius,
        t,
    }
}

/// One epsilon step of the degeneration check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitSample {
    pub eps: f64,
    /// max over probe points of |f_soliton(eps) - f_breather|; NaN when no
    /// probe survived the conditioning check.
    pub max_error: f64,
    /// Smallest |det| seen across probes.
    pub min_abs_det: f64,
    /// False when some probe's complex determinant fell below the
    /// conditioning threshold (reported, not fatal).
    pub conditioning_ok: bool,
}

/// Conjugate-pair 2-soliton built from a breather mode at finite eps:
///   p = mu + i lambda + eps e^{i chi},   q = -mu + i lambda + eps e^{-i chi},
///   c = 2 eps e^{i (gamma - chi) + rho eps},
/// paired with the conjugate triple.
pub fn soliton_pair_for_mode(mode: &SpectralMode, eps: f64) -> Vec<SolitonMode> {
    let i = Complex64::I;
    let p = mode.mu + i * mode.lambda + eps * (i * mode.chi).exp();
    let q = -mode.mu + i * mode.lambda + eps * (-i * mode.chi).exp();
    let c = 2.0 * eps * (i * (mode.gamma - mode.chi) + mode.rho * eps).exp();
    let first = SolitonMode { p, q, c };
    let second = SolitonMode { p: p.conj(), q: q.conj(), c: c.conj() };
    vec![first, second]
}

/// For each eps, build the conjugate-pair 2-soliton from the mode, evaluate
/// it through the complex determinant path, and report the worst deviation
/// from the breather field over the probe points. Errors should decrease as
/// eps shrinks.
pub fn soliton_limit_check(
    mode: &SpectralMode,
    eps_list: &[f64],
    probe_points: &[EvalPoint],
) -> Result<Vec<LimitSample>> {
    mode.validate(0)?;
    let breather = SolutionSpec::trigonometric(vec![*mode])?;
    let targets: Vec<f64> = probe_points
        .iter()
        .map(|pt| field_f(&breather, pt))
        .collect::<Result<_>>()?;

    let mut out = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let spec = SolutionSpec::soliton(soliton_pair_for_mode(mode, eps))?;
        let mut max_error = f64::NAN;
        let mut min_abs_det = f64::INFINITY;
        let mut conditioning_ok = true;
        for (pt, target) in probe_points.iter().zip(&targets) {
            let (det, _) = family_determinant(&spec, pt);
            min_abs_det = min_abs_det.min(det.abs());
            match field_f(&spec, pt) {
                Ok(f) => {
                    let err = (f - target).abs();
                    max_error = if max_error.is_nan() { err } else { max_error.max(err) };
                }
                Err(_) => {
                    conditioning_ok = false;
                }
            }
        }
        out.push(LimitSample { eps, max_error, min_abs_det, conditioning_ok });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solution::SolitonMode;

    #[test]
    fn residual_of_zero_solution_is_exactly_zero() {
        let spec = SolutionSpec::soliton(vec![SolitonMode::real(0.5, 0.5, 0.0)]).unwrap();
        let r = kp_residual(&spec, &EvalPoint::new(0.3, 0.2, 0.1), 1e-2).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn residual_scan_of_zero_solution() {
        let spec = SolutionSpec::soliton(vec![SolitonMode::real(0.5, 0.5, 0.0)]).unwrap();
        let grid = GridSpec::centered(3.0, 10).unwrap();
        let report = residual_scan(&spec, &grid, 0.0, 1e-2, 0.5);
        assert_eq!(report.max_residual, 0.0);
        assert_eq!(report.points_checked, 100);
        assert_eq!(report.points_excluded, 0);
    }

    #[test]
    fn single_soliton_residual_is_small() {
        let spec = SolutionSpec::soliton(vec![SolitonMode::real(0.5, 0.5, 1.0)]).unwrap();
        let r = kp_residual(&spec, &EvalPoint::new(0.3, 0.2, 0.1), 1e-2).unwrap();
        assert!(r < 1e-4, "residual = {r:e}");
    }

    #[test]
    fn residual_converges_at_fourth_order() {
        let spec = SolutionSpec::trigonometric(vec![SpectralMode::new(
            0.5, -0.1, 0.0, 0.0, 0.0,
        )])
        .unwrap();
        let pt = EvalPoint::new(1.0, 0.7, 0.0);
        let r1 = kp_residual(&spec, &pt, 1e-2).unwrap();
        let r2 = kp_residual(&spec, &pt, 5e-3).unwrap();
        let ratio = r1 / r2;
        assert!((8.0..=32.0).contains(&ratio), "ratio = {ratio}");
    }

    #[test]
    fn stencil_near_singular_set_errors() {
        let spec = SolutionSpec::trigonometric(vec![SpectralMode::new(
            0.5, -0.1, 0.0, 0.0, 0.0,
        )])
        .unwrap();
        // The singular line passes through the origin.
        let err = kp_residual(&spec, &EvalPoint::new(0.0, 0.0, 0.0), 1e-2).unwrap_err();
        assert!(matches!(err, Error::StencilOnSingularSet { .. }));
    }

    #[test]
    fn conjugate_pair_is_conjugate() {
        let mode = SpectralMode::new(0.5, -0.1, 0.3, 0.2, 0.1);
        let pair = soliton_pair_for_mode(&mode, 0.1);
        assert_eq!(pair[0].p.conj(), pair[1].p);
        assert_eq!(pair[0].q.conj(), pair[1].q);
        assert_eq!(pair[0].c.conj(), pair[1].c);
        assert!(SolutionSpec::soliton(pair).is_ok());
    }
}
