//! Singular-curve geometry: locating the zero set of the family determinant,
//! labeling the sign components it cuts the window into, and straight-line
//! half-plane cuts.

use std::collections::BTreeMap;
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::exec;
use crate::grid::{GridSpec, ScalarField};
use crate::matrix::{family_determinant, singular_tolerance};
use crate::regularize::REGULARIZATION_FLOOR;
use crate::solution::{EvalPoint, SolutionSpec};

/// Determinant of the family matrix at one point. For the N = 1
/// trigonometric family this is exactly 2 lambda Upsilon - sin 2 Gamma; the
/// solution is singular where it vanishes.
pub fn singular_indicator(spec: &SolutionSpec, pt: &EvalPoint) -> f64 {
    family_determinant(spec, pt).0
}

/// Crossing points of the determinant zero set, linked into polylines.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularTrace {
    /// Polylines in (x, y) at the fixed scan time.
    pub segments: Vec<Vec<(f64, f64)>>,
    /// Every vertex v satisfies |D(v)| < tolerance.
    pub tolerance: f64,
    pub t: f64,
}

impl SingularTrace {
    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.segments.iter().map(Vec::len).sum()
    }

    pub fn vertices(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.segments.iter().flatten().copied()
    }

    /// Euclidean distance from a point to the nearest polyline segment.
    pub fn distance(&self, x: f64, y: f64) -> f64 {
        let mut best = f64::INFINITY;
        for line in &self.segments {
            if line.len() == 1 {
                let (px, py) = line[0];
                best = best.min(((x - px).powi(2) + (y - py).powi(2)).sqrt());
                continue;
            }
            for w in line.windows(2) {
                best = best.min(point_segment_distance(x, y, w[0], w[1]));
            }
        }
        best
    }
}

fn point_segment_distance(x: f64, y: f64, a: (f64, f64), b: (f64, f64)) -> f64 {
    let (ax, ay) = a;
    let (bx, by) = b;
    let (dx, dy) = (bx - ax, by - ay);
    let len2 = dx * dx + dy * dy;
    let s = if len2 == 0.0 {
        0.0
    } else {
        (((x - ax) * dx + (y - ay) * dy) / len2).clamp(0.0, 1.0)
    };
    let (cx, cy) = (ax + s * dx, ay + s * dy);
    ((x - cx).powi(2) + (y - cy).powi(2)).sqrt()
}

// Edge identifier within the sample lattice: the edge starting at sample
// (ix, iy) going either +x (horizontal) or +y (vertical).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct EdgeId {
    ix: usize,
    iy: usize,
    vertical: bool,
}

/// Scan the grid for sign changes of the determinant, bisect each crossing
/// edge to the singular curve, and link the crossings into polylines with
/// marching-squares cell connectivity (saddles resolved by the sign of the
/// determinant at the cell center).
///
/// The caller is responsible for a grid fine enough that the determinant
/// changes sign at most once per cell edge.
pub fn scan_singular_curve(spec: &SolutionSpec, grid: &GridSpec, t: f64) -> SingularTrace {
    let d = exec::map_indexed(grid.len(), |idx| {
        let (ix, iy) = grid.coords(idx);
        singular_indicator(spec, &EvalPoint::new(grid.x_at(ix), grid.y_at(iy), t))
    });
    let value = |ix: usize, iy: usize| d[grid.index(ix, iy)];

    // Bisect every edge whose endpoints change sign.
    let mut crossings: BTreeMap<EdgeId, (f64, f64)> = BTreeMap::new();
    let mut tol_used = 0.0_f64;
    let mut edge_jobs: Vec<EdgeId> = Vec::new();
    for iy in 0..grid.ny {
        for ix in 0..grid.nx {
            if ix + 1 < grid.nx && value(ix, iy) * value(ix + 1, iy) < 0.0 {
                edge_jobs.push(EdgeId { ix, iy, vertical: false });
            }
            if iy + 1 < grid.ny && value(ix, iy) * value(ix, iy + 1) < 0.0 {
                edge_jobs.push(EdgeId { ix, iy, vertical: true });
            }
        }
    }
    let found = exec::map_slice(&edge_jobs, |edge| {
        let (x0, y0) = (grid.x_at(edge.ix), grid.y_at(edge.iy));
        let (x1, y1) = if edge.vertical {
            (x0, grid.y_at(edge.iy + 1))
        } else {
            (grid.x_at(edge.ix + 1), y0)
        };
        let d0 = value(edge.ix, edge.iy);
        let corner_scale = d0.abs().max(if edge.vertical {
            value(edge.ix, edge.iy + 1).abs()
        } else {
            value(edge.ix + 1, edge.iy).abs()
        });
        let tol = 1e-10 * (1.0 + corner_scale);
        let (px, py) = bisect_edge(spec, t, (x0, y0), (x1, y1), d0, tol);
        (*edge, (px, py), tol)
    });
    for (edge, pt, tol) in found {
        crossings.insert(edge, pt);
        tol_used = tol_used.max(tol);
    }

    // Per-cell segments between crossings on the cell's four edges.
    let mut segments: Vec<(EdgeId, EdgeId)> = Vec::new();
    for iy in 0..grid.ny.saturating_sub(1) {
        for ix in 0..grid.nx.saturating_sub(1) {
            let bottom = EdgeId { ix, iy, vertical: false };
            let top = EdgeId { ix, iy: iy + 1, vertical: false };
            let left = EdgeId { ix, iy, vertical: true };
            let right = EdgeId { ix: ix + 1, iy, vertical: true };
            let on: Vec<EdgeId> = [bottom, right, top, left]
                .into_iter()
                .filter(|e| crossings.contains_key(e))
                .collect();
            match on.len() {
                2 => segments.push((on[0], on[1])),
                4 => {
                    // Saddle: pair crossings by the sign at the cell center.
                    let cx = 0.5 * (grid.x_at(ix) + grid.x_at(ix + 1));
                    let cy = 0.5 * (grid.y_at(iy) + grid.y_at(iy + 1));
                    let center = singular_indicator(spec, &EvalPoint::new(cx, cy, t));
                    let s00 = value(ix, iy);
                    // Corners (ix, iy) and (ix+1, iy+1) share s00's sign here.
                    if center * s00 >= 0.0 {
                        // Center joins the s00 diagonal: isolate the other two corners.
                        segments.push((bottom, right));
                        segments.push((top, left));
                    } else {
                        segments.push((bottom, left));
                        segments.push((top, right));
                    }
                }
                _ => {}
            }
        }
    }

    // Chain segments that share crossing points into polylines.
    let mut adjacency: BTreeMap<EdgeId, Vec<usize>> = BTreeMap::new();
    for (i, (a, b)) in segments.iter().enumerate() {
        adjacency.entry(*a).or_default().push(i);
        adjacency.entry(*b).or_default().push(i);
    }
    let mut used = vec![false; segments.len()];
    let mut polylines: Vec<Vec<(f64, f64)>> = Vec::new();
    // Open chains first (endpoints of degree 1), then leftover loops.
    let starts: Vec<EdgeId> = adjacency
        .iter()
        .filter(|(_, segs)| segs.len() == 1)
        .map(|(e, _)| *e)
        .collect();
    let walk = |start: EdgeId, used: &mut Vec<bool>| -> Vec<(f64, f64)> {
        let mut line = vec![crossings[&start]];
        let mut cur = start;
        loop {
            let Some(&seg) = adjacency[&cur].iter().find(|&&s| !used[s]) else {
                break;
            };
            used[seg] = true;
            let (a, b) = segments[seg];
            cur = if a == cur { b } else { a };
            line.push(crossings[&cur]);
        }
        line
    };
    for start in starts {
        if adjacency[&start].iter().all(|&s| used[s]) {
            continue;
        }
        polylines.push(walk(start, &mut used));
    }
    for i in 0..segments.len() {
        if !used[i] {
            polylines.push(walk(segments[i].0, &mut used));
        }
    }
    // Isolated crossings (no cell pairing, e.g. at the window border).
    for (edge, pt) in &crossings {
        if !adjacency.contains_key(edge) {
            polylines.push(vec![*pt]);
        }
    }

    SingularTrace { segments: polylines, tolerance: tol_used, t }
}

fn bisect_edge(
    spec: &SolutionSpec,
    t: f64,
    mut a: (f64, f64),
    mut b: (f64, f64),
    d_at_a: f64,
    tol: f64,
) -> (f64, f64) {
    let mut da = d_at_a;
    for _ in 0..60 {
        let mid = (0.5 * (a.0 + b.0), 0.5 * (a.1 + b.1));
        let dm = singular_indicator(spec, &EvalPoint::new(mid.0, mid.1, t));
        if dm.abs() < tol {
            return mid;
        }
        if da * dm < 0.0 {
            b = mid;
        } else {
            a = mid;
            da = dm;
        }
    }
    (0.5 * (a.0 + b.0), 0.5 * (a.1 + b.1))
}

/// Connected components of the determinant's sign over a grid.
/// Label 0 marks singular cells; components are 4-connected regions of
/// constant sign labeled 1.. in scan order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentMask {
    grid: GridSpec,
    labels: Vec<u32>,
    count: usize,
}

impl ComponentMask {
    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    /// Number of nonzero component labels.
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn label(&self, ix: usize, iy: usize) -> u32 {
        self.labels[self.grid.index(ix, iy)]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Cells carrying a given label.
    pub fn population(&self, label: u32) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }

    /// Restrict a field to one component: cells outside the component are
    /// set to the regularization floor (intended for regularized fields).
    pub fn restrict(&self, field: &ScalarField, label: u32) -> ScalarField {
        assert_eq!(field.grid(), &self.grid, "field and mask grids must match");
        let mut out = field.clone();
        for idx in 0..self.labels.len() {
            if self.labels[idx] != label {
                let (ix, iy) = self.grid.coords(idx);
                out.set(ix, iy, REGULARIZATION_FLOOR, false);
            }
        }
        out
    }
}

/// Flood-fill labels of sign(D) regions; singular cells get label 0.
pub fn component_mask(spec: &SolutionSpec, grid: &GridSpec, t: f64) -> ComponentMask {
    let n = spec.len();
    let signs: Vec<i8> = exec::map_indexed(grid.len(), |idx| {
        let (ix, iy) = grid.coords(idx);
        let (det, scale) =
            family_determinant(spec, &EvalPoint::new(grid.x_at(ix), grid.y_at(iy), t));
        if det.abs() < singular_tolerance(scale, n) {
            0
        } else if det > 0.0 {
            1
        } else {
            -1
        }
    });

    let mut labels = vec![0_u32; grid.len()];
    let mut next = 0_u32;
    let mut queue = VecDeque::new();
    for start in 0..grid.len() {
        if signs[start] == 0 || labels[start] != 0 {
            continue;
        }
        next += 1;
        labels[start] = next;
        queue.push_back(start);
        while let Some(idx) = queue.pop_front() {
            let (ix, iy) = grid.coords(idx);
            let mut visit = |jx: usize, jy: usize| {
                let j = grid.index(jx, jy);
                if labels[j] == 0 && signs[j] == signs[idx] {
                    labels[j] = next;
                    queue.push_back(j);
                }
            };
            if ix > 0 {
                visit(ix - 1, iy);
            }
            if ix + 1 < grid.nx {
                visit(ix + 1, iy);
            }
            if iy > 0 {
                visit(ix, iy - 1);
            }
            if iy + 1 < grid.ny {
                visit(ix, iy + 1);
            }
        }
    }
    ComponentMask { grid: *grid, labels, count: next as usize }
}

/// Two-component mask split by the straight line through `point` with the
/// given normal: label 1 on the normal side (inclusive), label 2 opposite.
pub fn half_plane_mask(grid: &GridSpec, point: (f64, f64), normal: (f64, f64)) -> Result<ComponentMask> {
    if normal.0 == 0.0 && normal.1 == 0.0 {
        return Err(Error::InvalidSpec("half-plane normal must be nonzero".into()));
    }
    let mut labels = vec![0_u32; grid.len()];
    for idx in 0..grid.len() {
        let (ix, iy) = grid.coords(idx);
        let s = (grid.x_at(ix) - point.0) * normal.0 + (grid.y_at(iy) - point.1) * normal.1;
        labels[idx] = if s >= 0.0 { 1 } else { 2 };
    }
    let count = 1 + usize::from(labels.iter().any(|&l| l == 2));
    let count = if labels.iter().any(|&l| l == 1) { count } else { count - 1 };
    Ok(ComponentMask { grid: *grid, labels, count })
}

/// Total-least-squares line fit through a point set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub centroid: (f64, f64),
    /// Unit direction of the fitted line.
    pub direction: (f64, f64),
    /// Largest perpendicular distance of any input point to the line.
    pub max_deviation: f64,
}

/// Fit a straight line to points (principal axis of the covariance) and
/// report the worst perpendicular deviation. Needs at least two points.
pub fn fit_line(points: &[(f64, f64)]) -> Option<LineFit> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let (mut cx, mut cy) = (0.0, 0.0);
    for (x, y) in points {
        cx += x;
        cy += y;
    }
    cx /= n;
    cy /= n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in points {
        let (dx, dy) = (x - cx, y - cy);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    let theta = 0.5 * (2.0 * sxy).atan2(sxx - syy);
    let direction = (theta.cos(), theta.sin());
    let normal = (-direction.1, direction.0);
    let max_deviation = points
        .iter()
        .map(|(x, y)| ((x - cx) * normal.0 + (y - cy) * normal.1).abs())
        .fold(0.0, f64::max);
    Some(LineFit { centroid: (cx, cy), direction, max_deviation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solution::{SolitonMode, SpectralMode};
    use approx::assert_relative_eq;

    fn fig1_spec() -> SolutionSpec {
        SolutionSpec::trigonometric(vec![SpectralMode::new(0.5, -0.1, 0.0, 0.0, 0.0)]).unwrap()
    }

    #[test]
    fn indicator_is_zero_at_fig1_origin() {
        assert_eq!(singular_indicator(&fig1_spec(), &EvalPoint::new(0.0, 0.0, 0.0)), 0.0);
    }

    #[test]
    fn indicator_matches_printed_combination() {
        // Upsilon = 10, Gamma = 0, lambda = 0.5 gives D = 2*0.5*10 - 0 = 10.
        let spec = SolutionSpec::trigonometric(vec![SpectralMode::new(0.5, 0.0, 0.0, 0.0, 10.0)])
            .unwrap();
        let d = singular_indicator(&spec, &EvalPoint::new(0.0, 0.0, 0.0));
        assert_relative_eq!(d, 10.0, max_relative = 1e-15);
    }

    #[test]
    fn zero_soliton_has_no_trace() {
        let spec = SolutionSpec::soliton(vec![SolitonMode::real(0.5, 0.5, 0.0)]).unwrap();
        let grid = GridSpec::centered(5.0, 40).unwrap();
        let trace = scan_singular_curve(&spec, &grid, 0.0);
        assert!(trace.is_empty());
    }

    #[test]
    fn fig1_trace_is_straight() {
        let spec = fig1_spec();
        let grid = GridSpec::centered(15.0, 300).unwrap();
        let trace = scan_singular_curve(&spec, &grid, 0.0);
        assert!(!trace.is_empty());
        // Every vertex is on the curve within the recorded tolerance.
        for (x, y) in trace.vertices() {
            let d = singular_indicator(&spec, &EvalPoint::new(x, y, 0.0));
            assert!(d.abs() < trace.tolerance, "vertex off curve: |D| = {:e}", d.abs());
        }
        let vertices: Vec<(f64, f64)> = trace.vertices().collect();
        let fit = fit_line(&vertices).unwrap();
        let cell = grid.dx().max(grid.dy());
        assert!(
            fit.max_deviation < 2.0 * cell,
            "deviation {} vs cell {}",
            fit.max_deviation,
            cell
        );
        // The x = -2 mu y line through the origin: direction (2 mu, 1)/|..|.
        let slope = fit.direction.0 / fit.direction.1;
        assert_relative_eq!(slope, -0.2, epsilon = 1e-2);
    }

    #[test]
    fn fig7_trace_is_not_straight() {
        let chi = 0.105 * std::f64::consts::PI;
        let spec = SolutionSpec::trigonometric(vec![SpectralMode::new(0.65, -0.1, chi, 0.0, 0.0)])
            .unwrap();
        let grid = GridSpec::centered(15.0, 300).unwrap();
        let trace = scan_singular_curve(&spec, &grid, 0.0);
        let vertices: Vec<(f64, f64)> = trace.vertices().collect();
        let fit = fit_line(&vertices).unwrap();
        let cell = grid.dx().max(grid.dy());
        assert!(
            fit.max_deviation > 2.0 * cell,
            "expected curved trace, deviation {}",
            fit.max_deviation
        );
    }

    #[test]
    fn fig1_window_has_two_components() {
        let spec = fig1_spec();
        let grid = GridSpec::centered(15.0, 300).unwrap();
        let mask = component_mask(&spec, &grid, 0.0);
        assert_eq!(mask.count(), 2);
    }

    #[test]
    fn zero_soliton_is_one_component() {
        let spec = SolutionSpec::soliton(vec![SolitonMode::real(0.5, 0.5, 0.0)]).unwrap();
        let grid = GridSpec::centered(5.0, 20).unwrap();
        let mask = component_mask(&spec, &grid, 0.0);
        assert_eq!(mask.count(), 1);
    }

    #[test]
    fn component_labels_translate_with_whole_cells() {
        let spec = fig1_spec();
        let g1 = GridSpec::new(-5.0, 5.0, -5.0, 5.0, 100, 100).unwrap();
        // Same window shifted by exactly 3 cells in x.
        let shift = 3.0 * g1.dx();
        let g2 = GridSpec::new(-5.0 + shift, 5.0 + shift, -5.0, 5.0, 100, 100).unwrap();
        let m1 = component_mask(&spec, &g1, 0.0);
        let m2 = component_mask(&spec, &g2, 0.0);
        // Overlapping cells must agree up to a relabeling; with two
        // components it suffices to compare a few matched samples.
        for iy in [10_usize, 50, 90] {
            for ix in [10_usize, 40, 80] {
                let a = m1.label(ix + 3, iy);
                let b = m2.label(ix, iy);
                assert_eq!(a == 0, b == 0);
            }
        }
        assert_eq!(m1.count(), m2.count());
    }

    #[test]
    fn half_plane_split_is_even_on_symmetric_grid() {
        let grid = GridSpec::centered(4.0, 16).unwrap();
        let mask = half_plane_mask(&grid, (0.0, 0.0), (1.0, 0.0)).unwrap();
        assert_eq!(mask.count(), 2);
        assert_eq!(mask.population(1), mask.population(2));
    }

    #[test]
    fn half_plane_rejects_zero_normal() {
        let grid = GridSpec::centered(4.0, 8).unwrap();
        assert!(half_plane_mask(&grid, (0.0, 0.0), (0.0, 0.0)).is_err());
    }

    #[test]
    fn half_plane_signed_distance_on_single_row() {
        let grid = GridSpec::new(0.0, 8.0, 0.0, 1.0, 8, 2).unwrap();
        let mask = half_plane_mask(&grid, (4.0, 0.0), (1.0, 0.0)).unwrap();
        for ix in 0..8 {
            let want = if grid.x_at(ix) >= 4.0 { 1 } else { 2 };
            assert_eq!(mask.label(ix, 0), want);
        }
    }

    #[test]
    fn trace_refinement_is_stable() {
        let spec = fig1_spec();
        let coarse = scan_singular_curve(&spec, &GridSpec::centered(10.0, 100).unwrap(), 0.0);
        let fine = scan_singular_curve(&spec, &GridSpec::centered(10.0, 200).unwrap(), 0.0);
        let cell = 0.2; // coarse cell size
        let mut hausdorff = 0.0_f64;
        for (x, y) in coarse.vertices() {
            hausdorff = hausdorff.max(fine.distance(x, y));
        }
        for (x, y) in fine.vertices() {
            hausdorff = hausdorff.max(coarse.distance(x, y));
        }
        assert!(hausdorff < cell, "hausdorff = {hausdorff}");
    }
}
