//! Physical-layer computations: the alpha^2 diagnostic from fluid constants,
//! KP <-> physical coordinate transforms, surface elevation, and the
//! leading-order velocity conditions that drive the undertow picture.
//!
//! All KP-side math runs at alpha = 1; `alpha_squared` reports the sign case
//! and magnitude a given fluid column selects.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::ScalarField;

/// Physical fluid constants (SI units; surface tension enters only through
/// the printed combination rho g h^2 - 3 S).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FluidParams {
    /// Gravitational acceleration (m/s^2).
    pub g: f64,
    /// Depth (m).
    pub h: f64,
    /// Smallness parameter of the expansion, in (0, 1).
    pub epsilon: f64,
    /// Fluid density (kg/m^3).
    pub rho: f64,
    /// Surface tension parameter.
    pub s: f64,
}

impl FluidParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.g > 0.0 && self.h > 0.0 && self.rho > 0.0) {
            return Err(Error::InvalidSpec("g, h, rho must be positive".into()));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidSpec("epsilon must lie in (0, 1)".into()));
        }
        if self.s < 0.0 {
            return Err(Error::InvalidSpec("surface tension must be nonnegative".into()));
        }
        Ok(())
    }
}

/// Point in physical coordinates (meters, seconds). `z` is unset for
/// surface-level transforms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalPoint {
    pub x: f64,
    pub y: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<f64>,
    pub t: f64,
}

/// alpha^2 = 2 rho g / (rho g h^2 - 3 S). Positive sign selects the KP sign
/// case used here; the magnitude is a diagnostic only.
pub fn alpha_squared(fluid: &FluidParams) -> Result<f64> {
    let denom = fluid.rho * fluid.g * fluid.h * fluid.h - 3.0 * fluid.s;
    if denom == 0.0 {
        return Err(Error::DegenerateDepth);
    }
    Ok(2.0 * fluid.rho * fluid.g / denom)
}

/// KP -> physical: t' = 3 alpha^2 t / sqrt(g h), x' = x + 3 alpha^2 t,
/// y' = y / sqrt(2).
pub fn to_physical(pt: &crate::solution::EvalPoint, fluid: &FluidParams, alpha2: f64) -> PhysicalPoint {
    let c = (fluid.g * fluid.h).sqrt();
    PhysicalPoint {
        x: pt.x + 3.0 * alpha2 * pt.t,
        y: pt.y / std::f64::consts::SQRT_2,
        z: None,
        t: 3.0 * alpha2 * pt.t / c,
    }
}

/// Exact inverse of `to_physical`.
pub fn to_kp(p: &PhysicalPoint, fluid: &FluidParams, alpha2: f64) -> crate::solution::EvalPoint {
    let c = (fluid.g * fluid.h).sqrt();
    let t = p.t * c / (3.0 * alpha2);
    crate::solution::EvalPoint {
        x: p.x - p.t * c,
        y: p.y * std::f64::consts::SQRT_2,
        t,
    }
}

/// Dimensionless surface elevation eta_0 = 4 f / (3 epsilon alpha^2).
pub fn elevation(f: f64, fluid: &FluidParams, alpha2: f64) -> f64 {
    4.0 * f / (3.0 * fluid.epsilon * alpha2)
}

/// Physical surface elevation in meters: epsilon h eta_0.
pub fn elevation_meters(f: f64, fluid: &FluidParams, alpha2: f64) -> f64 {
    fluid.epsilon * fluid.h * elevation(f, fluid, alpha2)
}

/// Leading-order horizontal velocity: 4 sqrt(g h) / (3 alpha^2) f (m/s).
pub fn velocity_x(f: f64, fluid: &FluidParams, alpha2: f64) -> f64 {
    4.0 * (fluid.g * fluid.h).sqrt() / (3.0 * alpha2) * f
}

/// Leading-order vertical velocity:
/// -(h + z') 4 sqrt(g h) / (3 alpha^2) df/dx' (m/s). Vanishes identically at
/// the bottom z' = -h. `f_x` comes from either the analytic third
/// log-derivative path or finite differences of f; the two agree to 1e-5.
pub fn velocity_z(f_x: f64, z_phys: f64, fluid: &FluidParams, alpha2: f64) -> f64 {
    -(fluid.h + z_phys) * 4.0 * (fluid.g * fluid.h).sqrt() / (3.0 * alpha2) * f_x
}

/// Elementwise flow direction from the velocity conditions: +1 where the
/// water moves right (f > 0), -1 where it moves left, 0 inside the near-zero
/// band |f| < 1e-6 max|f|. Masked (singular) cells map to -1 and stay
/// masked, consistent with f -> -infinity there.
pub fn undertow_map(field: &ScalarField) -> ScalarField {
    let band = 1e-6 * field.max_abs();
    field.map(|v| {
        if v.abs() < band || v == 0.0 {
            0.0
        } else if v > 0.0 {
            1.0
        } else {
            -1.0
        }
    })
    .map_masked_to(-1.0)
}

impl ScalarField {
    /// Set masked cells to a sentinel value, keeping them masked.
    fn map_masked_to(mut self, value: f64) -> ScalarField {
        for idx in 0..self.len() {
            let (ix, iy) = self.grid().coords(idx);
            if self.is_masked(ix, iy) {
                self.set(ix, iy, value, true);
            }
        }
        self
    }
}
