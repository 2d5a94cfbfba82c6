//! Minimization of `(x, y) -> E(x, y, A)` over the half modular domain, along
//! the rhombic arc `x^2 + y^2 = 1`, along the rectangular line `x = 0`, and in
//! the full two-dimensional domain.

mod degeneracy;
mod phase;
mod rankin;

use std::f64::consts::PI;

use serde::Serialize;

pub use degeneracy::{degeneracy_bounds, r_polynomial, square_zetas, DegeneracyBounds};
pub use phase::{
    locate_boundaries, monotonicity, phase_sweep, sweep_areas, sweep_row, Boundary, Monotonicity,
    SweepRow,
};
pub use rankin::{rankin_sign_check, smallest_verified_area, RankinReport};

use crate::derivatives::verdict_of;
use crate::error::{check_tol, Error, Result};
use crate::jet::{energy_jet, Jet, Order};
use crate::lattice::{check_area, reduce_to_domain, LatticePoint, TRIANGULAR_Y};
use crate::model::LjModel;
use crate::optimize::{brent_root, nelder_mead};
use crate::potential::{LjParams, Potential};

/// Coordinate tolerance of the shape classifier.
pub const SHAPE_TOL: f64 = 1e-6;
/// Largest `y` searched when no degeneracy bound applies.
pub const DEFAULT_Y_CAP: f64 = 50.0;

/// An energy surface `(x, y) -> E(x, y, A)` at a fixed area.
pub trait Landscape: Sync {
    fn area(&self) -> f64;
    /// Jet at arbitrary `(x, y)` with `y > 0`.
    fn jet(&self, x: f64, y: f64, order: Order, tol: f64) -> Result<Jet>;
    /// Upper end of the searched `y` range.
    fn y_cap(&self) -> f64 {
        DEFAULT_Y_CAP
    }
}

/// The Lennard-Jones landscape, sharing unit-area sums through an [`LjModel`].
pub struct LjLandscape<'a> {
    model: &'a LjModel,
    area: f64,
    cap: f64,
}

impl<'a> LjLandscape<'a> {
    pub fn new(model: &'a LjModel, area: f64) -> Result<Self> {
        check_area(area)?;
        Ok(Self {
            model,
            area,
            cap: y_cap(&model.params(), area)?,
        })
    }
}

impl Landscape for LjLandscape<'_> {
    fn area(&self) -> f64 {
        self.area
    }
    fn jet(&self, x: f64, y: f64, order: Order, tol: f64) -> Result<Jet> {
        self.model.jet(x, y, self.area, order, tol)
    }
    fn y_cap(&self) -> f64 {
        self.cap
    }
}

/// The landscape of an arbitrary potential.
pub struct PotentialLandscape<P> {
    f: P,
    area: f64,
    cap: f64,
}

impl<P: Potential> PotentialLandscape<P> {
    pub fn new(f: P, area: f64) -> Result<Self> {
        check_area(area)?;
        Ok(Self {
            f,
            area,
            cap: DEFAULT_Y_CAP,
        })
    }

    pub fn with_cap(mut self, cap: f64) -> Self {
        self.cap = cap;
        self
    }
}

impl<P: Potential> Landscape for PotentialLandscape<P> {
    fn area(&self) -> f64 {
        self.area
    }
    fn jet(&self, x: f64, y: f64, order: Order, tol: f64) -> Result<Jet> {
        energy_jet(&self.f, x, y, self.area, order, tol)
    }
    fn y_cap(&self) -> f64 {
        self.cap
    }
}

/// `X2(A)^(1/3) + 1` for potentials of the classical shape when the
/// degeneracy bounds hold, `DEFAULT_Y_CAP` otherwise.
pub fn y_cap(params: &LjParams, area: f64) -> Result<f64> {
    if params.is_classical_shape() {
        let b = degeneracy_bounds(area, 1e-13)?;
        if b.valid {
            return Ok(b.x2.cbrt() + 1.0);
        }
    }
    Ok(DEFAULT_Y_CAP)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Shape {
    Triangular,
    Square,
    Rhombic { theta_deg: f64 },
    Rectangular { y: f64 },
    Generic,
}

/// Shape labels without parameters, in precedence order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PhaseKind {
    Triangular,
    Square,
    Rectangular,
    Rhombic,
    Generic,
}

impl PhaseKind {
    pub fn name(self) -> &'static str {
        match self {
            PhaseKind::Triangular => "Triangular",
            PhaseKind::Square => "Square",
            PhaseKind::Rectangular => "Rectangular",
            PhaseKind::Rhombic => "Rhombic",
            PhaseKind::Generic => "Generic",
        }
    }
}

impl Shape {
    pub fn kind(&self) -> PhaseKind {
        match self {
            Shape::Triangular => PhaseKind::Triangular,
            Shape::Square => PhaseKind::Square,
            Shape::Rhombic { .. } => PhaseKind::Rhombic,
            Shape::Rectangular { .. } => PhaseKind::Rectangular,
            Shape::Generic => PhaseKind::Generic,
        }
    }

    pub fn theta_deg(&self) -> Option<f64> {
        match self {
            Shape::Rhombic { theta_deg } => Some(*theta_deg),
            _ => None,
        }
    }
}

/// Shape of the lattice at reduced `(x, y)`, with precedence
/// triangular, square, rectangular, rhombic, generic.
pub fn classify_shape(x: f64, y: f64) -> Shape {
    if (x - 0.5).abs() < SHAPE_TOL && (y - TRIANGULAR_Y).abs() < SHAPE_TOL {
        Shape::Triangular
    } else if x.abs() < SHAPE_TOL && (y - 1.0).abs() < SHAPE_TOL {
        Shape::Square
    } else if x.abs() < SHAPE_TOL && y > 1.0 + SHAPE_TOL {
        Shape::Rectangular { y }
    } else if (x * x + y * y - 1.0).abs() < SHAPE_TOL {
        Shape::Rhombic {
            theta_deg: y.atan2(x).to_degrees(),
        }
    } else {
        Shape::Generic
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Certainty {
    GridPolished,
    BoundaryCapped,
}

impl Certainty {
    pub fn name(self) -> &'static str {
        match self {
            Certainty::GridPolished => "GridPolished",
            Certainty::BoundaryCapped => "BoundaryCapped",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhasePoint {
    pub area: f64,
    pub minimizer: LatticePoint,
    pub shape: Shape,
    pub energy: f64,
    pub energy_tail: f64,
    pub certainty: Certainty,
}

/// Tuning of the searches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    /// Tolerance of final energies and of all refinement steps.
    pub tol: f64,
    /// Tolerance of scans, grids and simplex descents.
    pub coarse_tol: f64,
    /// Samples of the 1D scans.
    pub scan_points: usize,
    /// Side of the 2D grid.
    pub grid: usize,
    /// Number of grid cells polished in 2D.
    pub starts: usize,
}

impl SearchOptions {
    pub fn new(tol: f64) -> Result<Self> {
        check_tol(tol)?;
        Ok(Self {
            tol,
            coarse_tol: (tol * 1e3).min(1e-7).max(tol),
            scan_points: 200,
            grid: 60,
            starts: 5,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RhombicMin {
    pub theta_deg: f64,
    pub energy: f64,
    pub energy_tail: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RectangularMin {
    pub y: f64,
    pub energy: f64,
    pub energy_tail: f64,
    /// The minimizer sits on the upper end of the searched range.
    pub capped: bool,
}

/// A local minimum found by the 2D search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Candidate {
    pub x: f64,
    pub y: f64,
    pub energy: f64,
    pub energy_tail: f64,
    pub shape: Shape,
    pub local_min: bool,
    pub capped: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FullSearch {
    pub best: PhasePoint,
    pub candidates: Vec<Candidate>,
}

/// Points `(value, label)` within this energy gap count as tied.
fn tie_gap(a: (f64, f64), b: (f64, f64)) -> f64 {
    2.0 * (a.1 + b.1) + 1e-12 * a.0.abs().max(b.0.abs())
}

fn sign_positive(v: f64) -> bool {
    v >= 0.0
}

/// Root of a derivative `d` known to change sign from negative to positive
/// between `lo` and `hi`. When an end is a critical point of the
/// landscape (`lo_exact`/`hi_exact`), the bracket is moved inwards until the
/// sign there is the expected one.
fn bracket_root(
    d: &mut dyn FnMut(f64) -> Result<f64>,
    mut lo: f64,
    mut hi: f64,
    lo_exact: bool,
    hi_exact: bool,
    xtol: f64,
) -> Result<f64> {
    let width = hi - lo;
    let mut d_lo = f64::NAN;
    let mut d_hi = f64::NAN;
    if lo_exact {
        let mut eps = 0.1 * width;
        for _ in 0..12 {
            let v = d(lo + eps)?;
            if v < 0.0 {
                lo += eps;
                d_lo = v;
                break;
            }
            eps *= 0.1;
        }
        if d_lo.is_nan() {
            return Ok(lo);
        }
    } else {
        d_lo = d(lo)?;
    }
    if hi_exact {
        let mut eps = 0.1 * width;
        for _ in 0..12 {
            let v = d(hi - eps)?;
            if v > 0.0 {
                hi -= eps;
                d_hi = v;
                break;
            }
            eps *= 0.1;
        }
        if d_hi.is_nan() {
            return Ok(hi);
        }
    } else {
        d_hi = d(hi)?;
    }
    if d_lo >= 0.0 || d_hi <= 0.0 {
        // the coarse scan and the refined evaluation disagree on a sign
        return Ok(if d_lo.abs() < d_hi.abs() { lo } else { hi });
    }
    brent_root(d, lo, hi, d_lo, d_hi, xtol, 200)
}

/// Searches on a landscape.
pub struct Minimizer {
    pub options: SearchOptions,
}

impl Minimizer {
    pub fn new(tol: f64) -> Result<Self> {
        Ok(Self {
            options: SearchOptions::new(tol)?,
        })
    }

    pub fn with_options(options: SearchOptions) -> Self {
        Self { options }
    }

    fn value(&self, land: &dyn Landscape, x: f64, y: f64) -> Result<(f64, f64)> {
        let j = land.jet(x, y, Order::Value, self.options.tol)?;
        Ok((j.value, j.tails[0]))
    }

    /// Minimizer of `theta -> E(cos theta, sin theta, A)` on `[60, 90]` degrees.
    pub fn rhombic(&self, land: &dyn Landscape) -> Result<RhombicMin> {
        let o = self.options;
        let n = o.scan_points.max(3);
        let lo = PI / 3.0;
        let hi = PI / 2.0;
        let theta = |i: usize| lo + (hi - lo) * i as f64 / (n - 1) as f64;
        let deriv = |t: f64, tol: f64| -> Result<f64> {
            let (x, y) = (t.cos(), t.sin());
            let g = land.jet(x, y, Order::Gradient, tol)?.gradient;
            Ok(-y * g.dx + x * g.dy)
        };
        // the ends are critical points: their curvature along the arc decides
        let tri = land.jet(0.5, TRIANGULAR_Y, Order::Hessian, o.coarse_tol)?;
        let sq = land.jet(0.0, 1.0, Order::Hessian, o.coarse_tol)?;
        let mut signs = Vec::with_capacity(n);
        signs.push(sign_positive(tri.hessian.dxx));
        for i in 1..n - 1 {
            signs.push(sign_positive(deriv(theta(i), o.coarse_tol)?));
        }
        signs.push(!sign_positive(sq.hessian.dxx));

        let mut cands: Vec<(f64, u8)> = Vec::new();
        if signs[0] {
            cands.push((lo, 0));
        }
        if !signs[n - 1] {
            cands.push((hi, 1));
        }
        let mut d = |t: f64| deriv(t, o.tol);
        for i in 0..n - 1 {
            if !signs[i] && signs[i + 1] {
                let t = bracket_root(
                    &mut d,
                    theta(i),
                    theta(i + 1),
                    i == 0,
                    i + 1 == n - 1,
                    1e-10,
                )?;
                cands.push((t, 2));
            }
        }
        let mut best: Option<(f64, u8, f64, f64)> = None;
        for (t, rank) in cands {
            let (e, tail) = self.value(land, t.cos(), t.sin())?;
            best = Some(match best {
                None => (t, rank, e, tail),
                Some(b) => {
                    let tied = (e - b.2).abs() <= tie_gap((e, tail), (b.2, b.3));
                    if (tied && rank < b.1) || (!tied && e < b.2) {
                        (t, rank, e, tail)
                    } else {
                        b
                    }
                }
            });
        }
        let (t, _, energy, energy_tail) =
            best.ok_or_else(|| Error::Search("no minimum on the rhombic arc".into()))?;
        Ok(RhombicMin {
            theta_deg: t.to_degrees(),
            energy,
            energy_tail,
        })
    }

    /// Minimizer of `y -> E(0, y, A)` on `[1, y_cap]`.
    pub fn rectangular(&self, land: &dyn Landscape) -> Result<RectangularMin> {
        let o = self.options;
        let n = o.scan_points.max(3);
        let cap = land.y_cap();
        let ys = |i: usize| cap.powf(i as f64 / (n - 1) as f64);
        let deriv = |y: f64, tol: f64| -> Result<f64> {
            Ok(land.jet(0.0, y, Order::Gradient, tol)?.gradient.dy)
        };
        let sq = land.jet(0.0, 1.0, Order::Hessian, o.coarse_tol)?;
        let mut signs = Vec::with_capacity(n);
        signs.push(sign_positive(sq.hessian.dyy));
        for i in 1..n {
            signs.push(sign_positive(deriv(ys(i), o.coarse_tol)?));
        }
        let mut cands: Vec<(f64, u8)> = Vec::new();
        if signs[0] {
            cands.push((1.0, 0));
        }
        if !signs[n - 1] {
            cands.push((cap, 2));
        }
        let mut d = |y: f64| deriv(y, o.tol);
        for i in 0..n - 1 {
            if !signs[i] && signs[i + 1] {
                let y = bracket_root(&mut d, ys(i), ys(i + 1), i == 0, false, 1e-11)?;
                cands.push((y, 1));
            }
        }
        let mut best: Option<(f64, u8, f64, f64)> = None;
        for (y, rank) in cands {
            let (e, tail) = self.value(land, 0.0, y)?;
            best = Some(match best {
                None => (y, rank, e, tail),
                Some(b) => {
                    let tied = (e - b.2).abs() <= tie_gap((e, tail), (b.2, b.3));
                    if (tied && rank < b.1) || (!tied && e < b.2) {
                        (y, rank, e, tail)
                    } else {
                        b
                    }
                }
            });
        }
        let (y, rank, energy, energy_tail) =
            best.ok_or_else(|| Error::Search("no minimum on the rectangular line".into()))?;
        Ok(RectangularMin {
            y,
            energy,
            energy_tail,
            capped: rank == 2,
        })
    }

    /// Grid-local minima of the energy on a grid that does not depend on the
    /// area, restricted to `y <= y_cap`, best first.
    fn grid_seeds(&self, land: &dyn Landscape) -> Result<Vec<(f64, f64, f64)>> {
        let o = self.options;
        let n = o.grid.max(3);
        let cap = land.y_cap();
        let top = cap.max(DEFAULT_Y_CAP);
        let mut vals = vec![vec![f64::NAN; n]; n];
        let mut coords = vec![vec![(0.0, 0.0); n]; n];
        for (i, row) in vals.iter_mut().enumerate() {
            let x = 0.5 * i as f64 / (n - 1) as f64;
            let y0 = (1.0 - x * x).sqrt();
            for (j, v) in row.iter_mut().enumerate() {
                let y = y0 * (top / y0).powf(j as f64 / (n - 1) as f64);
                coords[i][j] = (x, y);
                if y <= cap {
                    *v = land.jet(x, y, Order::Value, o.coarse_tol)?.value;
                }
            }
        }
        let mut seeds = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let v = vals[i][j];
                if v.is_nan() {
                    continue;
                }
                let mut local = true;
                for di in -1i64..=1 {
                    for dj in -1i64..=1 {
                        let (a, b) = (i as i64 + di, j as i64 + dj);
                        if (di, dj) == (0, 0) || a < 0 || b < 0 || a >= n as i64 || b >= n as i64 {
                            continue;
                        }
                        let w = vals[a as usize][b as usize];
                        if w < v {
                            local = false;
                        }
                    }
                }
                if local {
                    seeds.push((v, coords[i][j].0, coords[i][j].1));
                }
            }
        }
        seeds.sort_by(|a, b| {
            a.0.total_cmp(&b.0)
                .then(a.1.total_cmp(&b.1))
                .then(a.2.total_cmp(&b.2))
        });
        seeds.truncate(o.starts);
        Ok(seeds)
    }

    /// Simplex descent from a seed followed by Newton steps at the fine tolerance.
    fn polish(&self, land: &dyn Landscape, x: f64, y: f64) -> Result<(f64, f64)> {
        let o = self.options;
        let cap = land.y_cap();
        let objective = |p: [f64; 2]| -> Result<f64> {
            if !(p[1] > 0.0) || !p[0].is_finite() {
                return Ok(f64::INFINITY);
            }
            let (x, y) = reduce_to_domain(p[0], p[1])?;
            if y > cap {
                return Ok(f64::INFINITY);
            }
            Ok(land.jet(x, y, Order::Value, o.coarse_tol)?.value)
        };
        let r = nelder_mead(objective, [x, y], [0.02, 0.02 * y], 1e-7, 400)?;
        let (mut x, mut y) = reduce_to_domain(r.point[0], r.point[1])?;
        for _ in 0..30 {
            let j = land.jet(x, y, Order::Hessian, o.tol)?;
            let h = j.hessian;
            let det = h.determinant();
            if !(h.dxx > 0.0 && det > 0.0) {
                break;
            }
            let g = j.gradient;
            let mut sx = -(h.dyy * g.dx - h.dxy * g.dy) / det;
            let mut sy = -(h.dxx * g.dy - h.dxy * g.dx) / det;
            let len = sx.hypot(sy);
            if len > 0.05 {
                sx *= 0.05 / len;
                sy *= 0.05 / len;
            }
            let (nx, ny) = reduce_to_domain(x + sx, y + sy)?;
            if ny > cap {
                break;
            }
            x = nx;
            y = ny;
            if len < 1e-12 {
                break;
            }
        }
        Ok((x, y))
    }

    fn candidate(&self, land: &dyn Landscape, x: f64, y: f64, capped: bool) -> Result<Candidate> {
        let j = land.jet(x, y, Order::Hessian, self.options.tol)?;
        let (lo, _) = j.hessian.eigenvalues();
        let slack = 1e-9 * j.hessian.scale() + 2.0 * j.hessian_tail();
        Ok(Candidate {
            x,
            y,
            energy: j.value,
            energy_tail: j.tails[0],
            shape: classify_shape(x, y),
            local_min: capped || lo >= -slack,
            capped,
        })
    }

    /// Global minimizer over the domain intersected with `y <= y_cap`.
    pub fn full(&self, land: &dyn Landscape) -> Result<FullSearch> {
        let o = self.options;
        let cap = land.y_cap();
        let mut cands = Vec::new();

        let tri = land.jet(0.5, TRIANGULAR_Y, Order::Hessian, o.tol)?;
        if verdict_of(&tri.hessian, tri.hessian_tail()).0 == crate::derivatives::Verdict::LocalMin {
            cands.push(self.candidate(land, 0.5, TRIANGULAR_Y, false)?);
        }
        let sq = land.jet(0.0, 1.0, Order::Hessian, o.tol)?;
        if verdict_of(&sq.hessian, sq.hessian_tail()).0 == crate::derivatives::Verdict::LocalMin {
            cands.push(self.candidate(land, 0.0, 1.0, false)?);
        }
        let rh = self.rhombic(land)?;
        let t = rh.theta_deg.to_radians();
        cands.push(self.candidate(land, t.cos().clamp(0.0, 0.5), t.sin(), false)?);
        let rect = self.rectangular(land)?;
        cands.push(self.candidate(land, 0.0, rect.y, rect.capped)?);
        for (_, x, y) in self.grid_seeds(land)? {
            let (px, py) = self.polish(land, x, y)?;
            let capped = py >= cap * (1.0 - 1e-9);
            cands.push(self.candidate(land, px, py, capped)?);
        }

        let pool: Vec<&Candidate> = if cands.iter().any(|c| c.local_min) {
            cands.iter().filter(|c| c.local_min).collect()
        } else {
            cands.iter().collect()
        };
        let mut best = pool[0];
        for &c in &pool[1..] {
            let tied = (c.energy - best.energy).abs()
                <= tie_gap((c.energy, c.energy_tail), (best.energy, best.energy_tail));
            if (tied && c.shape.kind() < best.shape.kind()) || (!tied && c.energy < best.energy) {
                best = c;
            }
        }
        let minimizer = LatticePoint::new(best.x, best.y, land.area())?;
        let certainty = if best.capped {
            Certainty::BoundaryCapped
        } else {
            Certainty::GridPolished
        };
        Ok(FullSearch {
            best: PhasePoint {
                area: land.area(),
                minimizer,
                shape: best.shape,
                energy: best.energy,
                energy_tail: best.energy_tail,
                certainty,
            },
            candidates: cands,
        })
    }
}

/// Minimizer of the Lennard-Jones energy along the rhombic arc.
pub fn minimize_rhombic(params: &LjParams, area: f64, tol: f64) -> Result<RhombicMin> {
    let model = LjModel::new(*params)?;
    Minimizer::new(tol)?.rhombic(&LjLandscape::new(&model, area)?)
}

/// Minimizer of the Lennard-Jones energy along the rectangular line.
pub fn minimize_rectangular(params: &LjParams, area: f64, tol: f64) -> Result<RectangularMin> {
    let model = LjModel::new(*params)?;
    Minimizer::new(tol)?.rectangular(&LjLandscape::new(&model, area)?)
}

/// Global minimizer of the Lennard-Jones energy at a fixed area.
pub fn minimize_full(params: &LjParams, area: f64, tol: f64) -> Result<PhasePoint> {
    let model = LjModel::new(*params)?;
    Ok(Minimizer::new(tol)?
        .full(&LjLandscape::new(&model, area)?)?
        .best)
}

/// Whether the triangular point is the minimizer of `land` and beats every
/// other local minimum found by more than `tol`.
pub fn triangular_is_global(land: &dyn Landscape, tol: f64) -> Result<bool> {
    let search = Minimizer::new(tol)?.full(land)?;
    if search.best.shape != Shape::Triangular {
        return Ok(false);
    }
    let e = search.best.energy;
    Ok(search
        .candidates
        .iter()
        .filter(|c| c.local_min && c.shape != Shape::Triangular)
        .all(|c| c.energy > e + tol))
}

/// [`triangular_is_global`] for the Lennard-Jones energy at area `area`.
pub fn verify_global_min_at_area(params: &LjParams, area: f64, tol: f64) -> Result<bool> {
    let model = LjModel::new(*params)?;
    triangular_is_global(&LjLandscape::new(&model, area)?, tol)
}

/// [`verify_global_min_at_area`] at unit area.
pub fn verify_global_min_at_unit_area(params: &LjParams, tol: f64) -> Result<bool> {
    verify_global_min_at_area(params, 1.0, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_precedence() {
        assert_eq!(classify_shape(0.5, TRIANGULAR_Y), Shape::Triangular);
        assert_eq!(classify_shape(0.0, 1.0), Shape::Square);
        assert!(matches!(
            classify_shape(0.0, 1.5),
            Shape::Rectangular { .. }
        ));
        let t = 80f64.to_radians();
        match classify_shape(t.cos(), t.sin()) {
            Shape::Rhombic { theta_deg } => assert!((theta_deg - 80.0).abs() < 1e-10),
            s => panic!("unexpected {s:?}"),
        }
        assert_eq!(classify_shape(0.2, 1.4), Shape::Generic);
    }

    #[test]
    fn kind_order_is_precedence() {
        assert!(PhaseKind::Triangular < PhaseKind::Square);
        assert!(PhaseKind::Square < PhaseKind::Rectangular);
        assert!(PhaseKind::Rectangular < PhaseKind::Rhombic);
        assert!(PhaseKind::Rhombic < PhaseKind::Generic);
    }

    #[test]
    fn y_cap_uses_degeneracy_bounds_when_valid() {
        let p = LjParams::classical();
        assert_eq!(y_cap(&p, 1.0).unwrap(), DEFAULT_Y_CAP);
        let b = degeneracy_bounds(5.0, 1e-12).unwrap();
        assert!((y_cap(&p, 5.0).unwrap() - (b.x2.cbrt() + 1.0)).abs() < 1e-9);
        let other = LjParams::new(1.0, 1.0, 2.0, 4.0).unwrap();
        assert_eq!(y_cap(&other, 5.0).unwrap(), DEFAULT_Y_CAP);
    }
}
