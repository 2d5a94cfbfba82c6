//! Sign of `dE/dx` over the domain: for large enough area the energy is
//! non-decreasing in `x`, which pushes minimizers onto the line `x = 0`.

use serde::Serialize;

use super::{Landscape, LjLandscape};
use crate::error::{check_tol, Result};
use crate::jet::Order;
use crate::model::LjModel;
use crate::potential::LjParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RankinReport {
    pub area: f64,
    pub y_cap: f64,
    /// Smallest `dE/dx` over the grid with `x > 0`.
    pub min_dx: f64,
    pub argmin: (f64, f64),
    /// Largest `|dE/dx|` on `x = 0`, zero up to rounding by symmetry.
    pub max_abs_on_axis: f64,
    pub tol: f64,
    /// `min_dx >= -tol`.
    pub nonnegative: bool,
}

/// Evaluates `dE/dx` on `x_i = i / (2 n)`, `i = 1..=n`, and `n` log-spaced
/// `y` from the lower boundary of the domain to the search cap.
pub fn rankin_sign_check(model: &LjModel, area: f64, n: usize, tol: f64) -> Result<RankinReport> {
    check_tol(tol)?;
    let land = LjLandscape::new(model, area)?;
    let cap = land.y_cap();
    let n = n.max(2);
    let ys = |y0: f64, j: usize| y0 * (cap / y0).powf(j as f64 / (n - 1) as f64);
    let mut min_dx = f64::INFINITY;
    let mut argmin = (f64::NAN, f64::NAN);
    for i in 1..=n {
        let x = i as f64 / (2 * n) as f64;
        let y0 = (1.0 - x * x).sqrt();
        for j in 0..n {
            let y = ys(y0, j);
            let g = land.jet(x, y, Order::Gradient, tol)?.gradient.dx;
            if g < min_dx {
                min_dx = g;
                argmin = (x, y);
            }
        }
    }
    let mut max_abs_on_axis = 0.0f64;
    for j in 0..n {
        let g = land.jet(0.0, ys(1.0, j), Order::Gradient, tol)?.gradient.dx;
        max_abs_on_axis = max_abs_on_axis.max(g.abs());
    }
    Ok(RankinReport {
        area,
        y_cap: cap,
        min_dx,
        argmin,
        max_abs_on_axis,
        tol,
        nonnegative: min_dx >= -tol,
    })
}

/// Smallest area in `areas` from which the sign check passes at every
/// larger listed area, or `None` if it fails at the largest.
pub fn smallest_verified_area(
    params: &LjParams,
    areas: &[f64],
    n: usize,
    tol: f64,
) -> Result<Option<f64>> {
    let model = LjModel::new(*params)?;
    let mut sorted = areas.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut best = None;
    for &a in sorted.iter().rev() {
        if rankin_sign_check(&model, a, n, tol)?.nonnegative {
            best = Some(a);
        } else {
            break;
        }
    }
    Ok(best)
}
