//! Rectangular sampling window and sampled scalar fields.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rectangular window sampled at cell centers, row-major with y increasing
/// by row: sample (ix, iy) sits at
/// (x_min + (ix + 1/2) dx, y_min + (iy + 1/2) dy).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64, nx: usize, ny: usize) -> Result<Self> {
        if !(x_max > x_min && y_max > y_min) {
            return Err(Error::InvalidSpec("grid extents must be increasing".into()));
        }
        if nx < 2 || ny < 2 {
            return Err(Error::InvalidSpec("grid needs at least 2x2 samples".into()));
        }
        if ![x_min, x_max, y_min, y_max].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidSpec("grid extents must be finite".into()));
        }
        Ok(Self { x_min, x_max, y_min, y_max, nx, ny })
    }

    /// Square window [-half, half]^2 with n samples per side.
    pub fn centered(half: f64, n: usize) -> Result<Self> {
        Self::new(-half, half, -half, half, n, n)
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.nx as f64
    }

    pub fn dy(&self) -> f64 {
        (self.y_max - self.y_min) / self.ny as f64
    }

    pub fn x_at(&self, ix: usize) -> f64 {
        self.x_min + (ix as f64 + 0.5) * self.dx()
    }

    pub fn y_at(&self, iy: usize) -> f64 {
        self.y_min + (iy as f64 + 0.5) * self.dy()
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, ix: usize, iy: usize) -> usize {
        debug_assert!(ix < self.nx && iy < self.ny);
        iy * self.nx + ix
    }

    /// Inverse of `index`.
    pub fn coords(&self, idx: usize) -> (usize, usize) {
        (idx % self.nx, idx / self.nx)
    }
}

/// Field sampled on a grid at one time. Cells where evaluation failed (on or
/// numerically too close to the singular set) are masked; masked cells hold
/// the value 0 so exports stay finite.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    grid: GridSpec,
    t: f64,
    values: Vec<f64>,
    mask: Vec<bool>,
}

impl ScalarField {
    pub fn from_results(grid: GridSpec, t: f64, samples: Vec<Option<f64>>) -> Self {
        assert_eq!(samples.len(), grid.len());
        let mut values = Vec::with_capacity(samples.len());
        let mut mask = Vec::with_capacity(samples.len());
        for s in samples {
            match s {
                Some(v) => {
                    values.push(v);
                    mask.push(false);
                }
                None => {
                    values.push(0.0);
                    mask.push(true);
                }
            }
        }
        Self { grid, t, values, mask }
    }

    pub fn from_values(grid: GridSpec, t: f64, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), grid.len());
        let mask = vec![false; values.len()];
        Self { grid, t, values, mask }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, ix: usize, iy: usize) -> f64 {
        self.values[self.grid.index(ix, iy)]
    }

    pub fn is_masked(&self, ix: usize, iy: usize) -> bool {
        self.mask[self.grid.index(ix, iy)]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn masked_count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    /// (value, masked) pairs in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (f64, bool)> + '_ {
        self.values.iter().copied().zip(self.mask.iter().copied())
    }

    /// Largest finite |value|; 0 for an all-masked field.
    pub fn max_abs(&self) -> f64 {
        self.iter()
            .filter(|(_, m)| !m)
            .map(|(v, _)| v.abs())
            .fold(0.0, f64::max)
    }

    /// Min/max over unmasked cells, if any exist.
    pub fn finite_range(&self) -> Option<(f64, f64)> {
        let mut range: Option<(f64, f64)> = None;
        for (v, masked) in self.iter() {
            if masked {
                continue;
            }
            range = Some(match range {
                None => (v, v),
                Some((lo, hi)) => (lo.min(v), hi.max(v)),
            });
        }
        range
    }

    /// Elementwise map preserving the mask.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> ScalarField {
        let values = self
            .values
            .iter()
            .zip(&self.mask)
            .map(|(&v, &m)| if m { v } else { f(v) })
            .collect();
        Self { grid: self.grid, t: self.t, values, mask: self.mask.clone() }
    }

    /// Replace value and mask at one cell (used by restriction helpers).
    pub(crate) fn set(&mut self, ix: usize, iy: usize, value: f64, masked: bool) {
        let idx = self.grid.index(ix, iy);
        self.values[idx] = value;
        self.mask[idx] = masked;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn samples_sit_at_cell_centers() {
        let g = GridSpec::new(-1.0, 1.0, 0.0, 4.0, 4, 8).unwrap();
        assert_relative_eq!(g.dx(), 0.5);
        assert_relative_eq!(g.dy(), 0.5);
        assert_relative_eq!(g.x_at(0), -0.75);
        assert_relative_eq!(g.x_at(3), 0.75);
        assert_relative_eq!(g.y_at(0), 0.25);
        assert_relative_eq!(g.y_at(7), 3.75);
    }

    #[test]
    fn row_major_y_by_row() {
        let g = GridSpec::new(0.0, 1.0, 0.0, 1.0, 3, 2).unwrap();
        assert_eq!(g.index(2, 0), 2);
        assert_eq!(g.index(0, 1), 3);
        assert_eq!(g.coords(5), (2, 1));
    }

    #[test]
    fn rejects_degenerate_extents() {
        assert!(GridSpec::new(1.0, 1.0, 0.0, 1.0, 4, 4).is_err());
        assert!(GridSpec::new(0.0, 1.0, 0.0, 1.0, 1, 4).is_err());
    }

    #[test]
    fn masked_cells_hold_zero() {
        let g = GridSpec::new(0.0, 1.0, 0.0, 1.0, 2, 2).unwrap();
        let f = ScalarField::from_results(g, 0.0, vec![Some(1.5), None, Some(-2.0), Some(0.5)]);
        assert_eq!(f.masked_count(), 1);
        assert!(f.is_masked(1, 0));
        assert_eq!(f.value(1, 0), 0.0);
        assert_eq!(f.max_abs(), 2.0);
    }
}
