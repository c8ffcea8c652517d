//! Tracking field extremes over time and detecting the short-lived
//! rogue-wave transient produced when two dipole troughs collide.
//!
//! Detection runs on the raw field; regularized/clipped maps are export-only
//! (their thresholds saturate by construction).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec;
use crate::field::{field_f, field_f_grid};
use crate::grid::{GridSpec, ScalarField};
use crate::solution::{EvalPoint, SolutionSpec};

/// Per-time extremes of the field over a scan window.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremeSeries {
    pub times: Vec<f64>,
    pub max_value: Vec<f64>,
    pub max_location: Vec<(f64, f64)>,
    /// Minima bookkeeping: singular cells count as a -infinity floor.
    pub min_value: Vec<f64>,
    pub min_location: Vec<(f64, f64)>,
    /// Per frame: grid local maxima within 90% of the frame maximum, sorted
    /// by descending value (at most 8 kept). Feeds the two-top readout.
    pub crest_points: Vec<Vec<(f64, f64)>>,
}

impl ExtremeSeries {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// A detected transient amplitude event.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RogueEvent {
    pub t_peak: f64,
    pub amplitude: f64,
    /// Median of the series maxima over the outer background windows.
    pub background: f64,
    pub prominence_ratio: f64,
    /// Crest locations at the peak (one or two tops).
    pub tops: Vec<(f64, f64)>,
}

/// Global max/min of the raw field per time step. Singular cells are
/// excluded from the max and enter the min bookkeeping as a -infinity
/// floor; extremum locations are polished off-lattice by one short
/// Nelder-Mead run from the best cell. Time steps evaluate in parallel.
pub fn time_series_max(spec: &SolutionSpec, grid: &GridSpec, times: &[f64]) -> ExtremeSeries {
    assert!(!times.is_empty(), "times must be nonempty");
    let frames = exec::map_slice(times, |&t| frame_extremes(spec, grid, t));
    let mut out = ExtremeSeries {
        times: times.to_vec(),
        max_value: Vec::with_capacity(times.len()),
        max_location: Vec::with_capacity(times.len()),
        min_value: Vec::with_capacity(times.len()),
        min_location: Vec::with_capacity(times.len()),
        crest_points: Vec::with_capacity(times.len()),
    };
    for f in frames {
        out.max_value.push(f.max_value);
        out.max_location.push(f.max_location);
        out.min_value.push(f.min_value);
        out.min_location.push(f.min_location);
        out.crest_points.push(f.crest_points);
    }
    out
}

struct FrameExtremes {
    max_value: f64,
    max_location: (f64, f64),
    min_value: f64,
    min_location: (f64, f64),
    crest_points: Vec<(f64, f64)>,
}

/// Cells eligible for extreme statistics: unmasked with no masked cell in
/// the surrounding 5x5 block. Samples closer to the singular trace carry
/// the divergence tail, whose magnitude reflects the grid alignment rather
/// than the wave structure.
fn eligible_cells(field: &ScalarField) -> Vec<bool> {
    let grid = *field.grid();
    let mut out = vec![false; field.len()];
    for iy in 0..grid.ny {
        for ix in 0..grid.nx {
            if field.is_masked(ix, iy) {
                continue;
            }
            let mut clear = true;
            'scan: for dy in -2i64..=2 {
                for dx in -2i64..=2 {
                    let jx = ix as i64 + dx;
                    let jy = iy as i64 + dy;
                    if jx < 0 || jy < 0 || jx >= grid.nx as i64 || jy >= grid.ny as i64 {
                        continue;
                    }
                    if field.is_masked(jx as usize, jy as usize) {
                        clear = false;
                        break 'scan;
                    }
                }
            }
            out[grid.index(ix, iy)] = clear;
        }
    }
    out
}

fn frame_extremes(spec: &SolutionSpec, grid: &GridSpec, t: f64) -> FrameExtremes {
    let field = field_f_grid(spec, grid, t);
    let eligible = eligible_cells(&field);

    let mut best_max: Option<(f64, usize)> = None;
    let mut best_min: Option<(f64, usize)> = None;
    let mut first_masked: Option<usize> = None;
    for idx in 0..field.len() {
        let (ix, iy) = grid.coords(idx);
        if field.is_masked(ix, iy) {
            first_masked.get_or_insert(idx);
            continue;
        }
        if !eligible[idx] {
            continue;
        }
        let v = field.value(ix, iy);
        if best_max.map_or(true, |(b, _)| v > b) {
            best_max = Some((v, idx));
        }
        if best_min.map_or(true, |(b, _)| v < b) {
            best_min = Some((v, idx));
        }
    }

    let cell_center = |idx: usize| {
        let (ix, iy) = grid.coords(idx);
        (grid.x_at(ix), grid.y_at(iy))
    };

    let grid_max = best_max.map_or(f64::NEG_INFINITY, |(v, _)| v);
    let (max_value, max_location) = match best_max {
        Some((v, idx)) => polish(spec, grid, t, cell_center(idx), v, false),
        None => (f64::NEG_INFINITY, (f64::NAN, f64::NAN)),
    };
    // Masked cells floor the minimum at -infinity.
    let (min_value, min_location) = match (first_masked, best_min) {
        (Some(idx), _) => (f64::NEG_INFINITY, cell_center(idx)),
        (None, Some((v, idx))) => polish(spec, grid, t, cell_center(idx), v, true),
        (None, None) => (f64::INFINITY, (f64::NAN, f64::NAN)),
    };

    let crest_points = collect_crests(&field, &eligible, grid_max);

    FrameExtremes { max_value, max_location, min_value, min_location, crest_points }
}

/// Interior grid local maxima over eligible cells at or above 90% of the
/// frame amplitude, by descending value.
fn collect_crests(field: &ScalarField, eligible: &[bool], amplitude: f64) -> Vec<(f64, f64)> {
    let grid = *field.grid();
    let threshold = 0.9 * amplitude;
    let mut crests: Vec<(f64, usize)> = Vec::new();
    for iy in 1..grid.ny.saturating_sub(1) {
        for ix in 1..grid.nx.saturating_sub(1) {
            if !eligible[grid.index(ix, iy)] {
                continue;
            }
            let v = field.value(ix, iy);
            if v < threshold {
                continue;
            }
            let higher_neighbor = [(ix - 1, iy), (ix + 1, iy), (ix, iy - 1), (ix, iy + 1)]
                .into_iter()
                .any(|(jx, jy)| eligible[grid.index(jx, jy)] && field.value(jx, jy) >= v);
            if !higher_neighbor {
                crests.push((v, grid.index(ix, iy)));
            }
        }
    }
    crests.sort_unstable_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    crests.truncate(8);
    crests
        .into_iter()
        .map(|(_, idx)| {
            let (ix, iy) = grid.coords(idx);
            (grid.x_at(ix), grid.y_at(iy))
        })
        .collect()
}

// One short Nelder-Mead run in (x, y) at fixed t, started from the best
// grid cell with a half-cell simplex and confined to the one-cell box
// around it (a local polish; walking further would climb the divergence
// next to the singular trace). Failed or out-of-box evaluations act as
// -infinity (or +infinity when minimizing), so reported locations stay
// inside the scan window. Deterministic: fixed iteration budget.
fn polish(
    spec: &SolutionSpec,
    grid: &GridSpec,
    t: f64,
    start: (f64, f64),
    start_value: f64,
    minimize: bool,
) -> (f64, (f64, f64)) {
    let sign = if minimize { -1.0 } else { 1.0 };
    let (bx, by) = (0.5 * grid.dx(), 0.5 * grid.dy());
    let eval = |x: f64, y: f64| -> f64 {
        if x < grid.x_min || x > grid.x_max || y < grid.y_min || y > grid.y_max {
            return f64::NEG_INFINITY;
        }
        if (x - start.0).abs() > bx || (y - start.1).abs() > by {
            return f64::NEG_INFINITY;
        }
        match field_f(spec, &EvalPoint::new(x, y, t)) {
            Ok(v) => sign * v,
            Err(_) => f64::NEG_INFINITY,
        }
    };
    let (dx, dy) = (0.5 * grid.dx(), 0.5 * grid.dy());
    let mut simplex = [
        (start, sign * start_value),
        ((start.0 + dx, start.1), eval(start.0 + dx, start.1)),
        ((start.0, start.1 + dy), eval(start.0, start.1 + dy)),
    ];
    for _ in 0..60 {
        // Descending by objective: best first.
        simplex.sort_unstable_by(|a, b| b.1.total_cmp(&a.1));
        let [best, mid, worst] = simplex;
        let centroid = (0.5 * (best.0 .0 + mid.0 .0), 0.5 * (best.0 .1 + mid.0 .1));
        let reflect = (
            centroid.0 + (centroid.0 - worst.0 .0),
            centroid.1 + (centroid.1 - worst.0 .1),
        );
        let fr = eval(reflect.0, reflect.1);
        if fr > best.1 {
            let expand = (
                centroid.0 + 2.0 * (centroid.0 - worst.0 .0),
                centroid.1 + 2.0 * (centroid.1 - worst.0 .1),
            );
            let fe = eval(expand.0, expand.1);
            simplex[2] = if fe > fr { (expand, fe) } else { (reflect, fr) };
        } else if fr > mid.1 {
            simplex[2] = (reflect, fr);
        } else {
            let contract = (
                centroid.0 + 0.5 * (worst.0 .0 - centroid.0),
                centroid.1 + 0.5 * (worst.0 .1 - centroid.1),
            );
            let fc = eval(contract.0, contract.1);
            if fc > worst.1 {
                simplex[2] = (contract, fc);
            } else {
                // Shrink toward the best vertex.
                for v in simplex.iter_mut().skip(1) {
                    v.0 = (
                        best.0 .0 + 0.5 * (v.0 .0 - best.0 .0),
                        best.0 .1 + 0.5 * (v.0 .1 - best.0 .1),
                    );
                    v.1 = eval(v.0 .0, v.0 .1);
                }
            }
        }
    }
    simplex.sort_unstable_by(|a, b| b.1.total_cmp(&a.1));
    let (loc, val) = simplex[0];
    (sign * val, loc)
}

/// Detect short-lived amplitude events: local maxima of the per-time series
/// maxima whose ratio to the background (median of the maxima over the
/// outer `background_window`-wide time windows) reaches `ratio_threshold`.
pub fn detect_transient(
    series: &ExtremeSeries,
    background_window: f64,
    ratio_threshold: f64,
) -> Result<Vec<RogueEvent>> {
    let n = series.len();
    if n < 3 {
        return Err(Error::InsufficientWindow {
            needed: 2.0 * background_window,
            available: 0.0,
        });
    }
    let t0 = series.times[0];
    let t1 = series.times[n - 1];
    let span = t1 - t0;
    if span <= 2.0 * background_window {
        return Err(Error::InsufficientWindow {
            needed: 2.0 * background_window,
            available: span,
        });
    }

    let mut outer: Vec<f64> = series
        .times
        .iter()
        .zip(&series.max_value)
        .filter(|(&t, _)| t <= t0 + background_window || t >= t1 - background_window)
        .map(|(_, &v)| v)
        .collect();
    outer.sort_unstable_by(f64::total_cmp);
    let background = match outer.len() {
        0 => {
            return Err(Error::InsufficientWindow {
                needed: 2.0 * background_window,
                available: span,
            })
        }
        m if m % 2 == 1 => outer[m / 2],
        m => 0.5 * (outer[m / 2 - 1] + outer[m / 2]),
    };

    // One event per above-threshold excursion: contiguous runs of samples
    // whose ratio to the background reaches the threshold collapse to the
    // run's highest sample, so ripple inside a single transient does not
    // split it into several events.
    let over = |v: f64| -> bool {
        if background > 0.0 {
            v / background >= ratio_threshold
        } else {
            v > 0.0
        }
    };
    let interior = |i: usize| {
        series.times[i] > t0 + background_window && series.times[i] < t1 - background_window
    };

    let mut events = Vec::new();
    let mut run_best: Option<usize> = None;
    for i in 0..=n {
        if i < n && over(series.max_value[i]) {
            if run_best.map_or(true, |b| series.max_value[i] > series.max_value[b]) {
                run_best = Some(i);
            }
        } else if let Some(peak) = run_best.take() {
            if interior(peak) {
                let v = series.max_value[peak];
                let mut tops = series.crest_points[peak].clone();
                tops.truncate(2);
                events.push(RogueEvent {
                    t_peak: series.times[peak],
                    amplitude: v,
                    background,
                    prominence_ratio: if background > 0.0 {
                        v / background
                    } else {
                        f64::INFINITY
                    },
                    tops,
                });
            }
        }
    }
    Ok(events)
}

/// The two deepest spatially separated local minima of the field at time t
/// (separation at least 1 KP unit), sorted deepest first. Minima must dip
/// below -0.1 max|f| (over eligible cells) to ignore ripple; boundary cells
/// and cells within two cells of the singular trace are not considered.
pub fn trough_points(spec: &SolutionSpec, grid: &GridSpec, t: f64) -> Result<Vec<(f64, f64)>> {
    let field = field_f_grid(spec, grid, t);
    let eligible = eligible_cells(&field);
    let max_abs = field
        .values()
        .iter()
        .zip(&eligible)
        .filter(|(_, &e)| e)
        .map(|(v, _)| v.abs())
        .fold(0.0, f64::max);
    let cutoff = -0.1 * max_abs;

    let mut minima: Vec<(f64, usize)> = Vec::new();
    for iy in 1..grid.ny.saturating_sub(1) {
        for ix in 1..grid.nx.saturating_sub(1) {
            if !eligible[grid.index(ix, iy)] {
                continue;
            }
            let v = field.value(ix, iy);
            if v > cutoff {
                continue;
            }
            let lower_neighbor = [(ix - 1, iy), (ix + 1, iy), (ix, iy - 1), (ix, iy + 1)]
                .into_iter()
                .any(|(jx, jy)| {
                    eligible[grid.index(jx, jy)] && field.value(jx, jy) <= v
                });
            if !lower_neighbor {
                minima.push((v, grid.index(ix, iy)));
            }
        }
    }
    minima.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let locate = |idx: usize| {
        let (ix, iy) = grid.coords(idx);
        (grid.x_at(ix), grid.y_at(iy))
    };
    let Some(&(_, first_idx)) = minima.first() else {
        return Err(Error::FewerThanTwoTroughs(0));
    };
    let first = locate(first_idx);
    let second = minima[1..].iter().map(|&(_, idx)| locate(idx)).find(|&(x, y)| {
        let d = ((x - first.0).powi(2) + (y - first.1).powi(2)).sqrt();
        d >= 1.0
    });
    match second {
        Some(second) => Ok(vec![first, second]),
        None => Err(Error::FewerThanTwoTroughs(1)),
    }
}
