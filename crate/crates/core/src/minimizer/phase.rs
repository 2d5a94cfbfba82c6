//! The minimizer as a function of the area.

use serde::Serialize;

use super::{LjLandscape, Minimizer, PhaseKind, PhasePoint, SearchOptions, Shape};
use crate::error::{Error, Result};
use crate::model::LjModel;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub area: f64,
    pub point: Option<PhasePoint>,
    pub error: Option<String>,
}

/// `min, min + step, ...` up to `max` inclusive (within a rounding slack).
pub fn sweep_areas(min: f64, max: f64, step: f64) -> Result<Vec<f64>> {
    if !(min > 0.0 && max >= min && step > 0.0) || !max.is_finite() {
        return Err(Error::Search(format!(
            "invalid area range [{min}, {max}] with step {step}"
        )));
    }
    let n = ((max - min) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| min + step * i as f64).collect())
}

/// Global minimizer at one area; errors are kept in the row.
pub fn sweep_row(model: &LjModel, area: f64, options: SearchOptions) -> SweepRow {
    let run = || -> Result<PhasePoint> {
        let land = LjLandscape::new(model, area)?;
        Ok(Minimizer::with_options(options).full(&land)?.best)
    };
    match run() {
        Ok(p) => SweepRow {
            area,
            point: Some(p),
            error: None,
        },
        Err(e) => SweepRow {
            area,
            point: None,
            error: Some(e.to_string()),
        },
    }
}

/// Sequential sweep over `areas`.
pub fn phase_sweep(model: &LjModel, areas: &[f64], options: SearchOptions) -> Vec<SweepRow> {
    areas
        .iter()
        .map(|&a| sweep_row(model, a, options))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Monotonicity {
    /// Phases in order of increasing area, consecutive repeats merged.
    pub order: Vec<PhaseKind>,
    pub theta_nondecreasing: bool,
    pub y_nondecreasing: bool,
}

/// Ordering diagnostics of a sweep sorted by area.
pub fn monotonicity(rows: &[SweepRow]) -> Monotonicity {
    let pts: Vec<&PhasePoint> = rows.iter().filter_map(|r| r.point.as_ref()).collect();
    let mut order: Vec<PhaseKind> = Vec::new();
    for p in &pts {
        let k = p.shape.kind();
        if order.last() != Some(&k) {
            order.push(k);
        }
    }
    let series = |f: fn(&Shape) -> Option<f64>| {
        let v: Vec<f64> = pts.iter().filter_map(|p| f(&p.shape)).collect();
        v.windows(2).all(|w| w[1] >= w[0] - 1e-6)
    };
    Monotonicity {
        order,
        theta_nondecreasing: series(|s| s.theta_deg()),
        y_nondecreasing: series(|s| match s {
            Shape::Rectangular { y } => Some(*y),
            _ => None,
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Boundary {
    pub lower: PhaseKind,
    pub upper: PhaseKind,
    /// Midpoint of the final bracket.
    pub area: f64,
    pub bracket: (f64, f64),
    /// Minimizer at the upper end of the bracket.
    pub upper_point: PhasePoint,
}

/// Bisects every change of phase between consecutive successful rows down
/// to a bracket of width `resolution`.
pub fn locate_boundaries(
    model: &LjModel,
    rows: &[SweepRow],
    options: SearchOptions,
    resolution: f64,
) -> Result<Vec<Boundary>> {
    let minimizer = Minimizer::with_options(options);
    let solve =
        |a: f64| -> Result<PhasePoint> { Ok(minimizer.full(&LjLandscape::new(model, a)?)?.best) };
    let pts: Vec<&PhasePoint> = rows.iter().filter_map(|r| r.point.as_ref()).collect();
    let mut out = Vec::new();
    for w in pts.windows(2) {
        let (lower, upper) = (w[0].shape.kind(), w[1].shape.kind());
        if lower == upper {
            continue;
        }
        let (mut lo, mut hi) = (w[0].area, w[1].area);
        let mut upper_point = *w[1];
        while hi - lo > resolution {
            let mid = 0.5 * (lo + hi);
            let p = solve(mid)?;
            if p.shape.kind() == lower {
                lo = mid;
            } else {
                hi = mid;
                upper_point = p;
            }
        }
        out.push(Boundary {
            lower,
            upper: upper_point.shape.kind(),
            area: 0.5 * (lo + hi),
            bracket: (lo, hi),
            upper_point,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn area_grid_includes_both_ends() {
        let a = sweep_areas(1.0, 1.3, 0.01).unwrap();
        assert_eq!(a.len(), 31);
        assert!((a[30] - 1.3).abs() < 1e-12);
        assert!(sweep_areas(1.0, 0.5, 0.1).is_err());
    }
}
