//! Parametrization of two-dimensional Bravais lattices by the half modular
//! domain `D = {0 <= x <= 1/2, y > 0, x^2 + y^2 >= 1}` and an area `A`.
//!
//! The lattice with parameters `(x, y, A)` is spanned by
//! `u = sqrt(A/y) (1, 0)` and `v = sqrt(A/y) (x, y)`, so that
//! `|m u + n v|^2 = A [(m + x n)^2 / y + y n^2]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack allowed on `x^2 + y^2 >= 1` and `0 <= x <= 1/2` so that points built
/// from `cos`/`sin` on the rhombic arc are accepted.
pub const DOMAIN_SLACK: f64 = 1e-12;

const MAX_REDUCTION_STEPS: usize = 64;

/// `y` coordinate of the triangular lattice.
pub const TRIANGULAR_Y: f64 = 0.866_025_403_784_438_6;

/// A Bravais lattice of area `area`, identified up to rotation and reflection
/// by its coordinates `(x, y)` in the half modular domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticePoint {
    x: f64,
    y: f64,
    area: f64,
}

impl LatticePoint {
    /// Builds a point that must already lie in the half modular domain.
    pub fn new(x: f64, y: f64, area: f64) -> Result<Self> {
        check_area(area)?;
        if !(x.is_finite() && y.is_finite()) {
            return Err(Error::InvalidPoint {
                x,
                y,
                reason: "coordinates must be finite",
            });
        }
        if y <= 0.0 {
            return Err(Error::InvalidPoint {
                x,
                y,
                reason: "y must be positive",
            });
        }
        if !(-DOMAIN_SLACK..=0.5 + DOMAIN_SLACK).contains(&x) {
            return Err(Error::InvalidPoint {
                x,
                y,
                reason: "x must lie in [0, 1/2]",
            });
        }
        if x * x + y * y < 1.0 - DOMAIN_SLACK {
            return Err(Error::InvalidPoint {
                x,
                y,
                reason: "x^2 + y^2 must be at least 1",
            });
        }
        Ok(Self {
            x: x.clamp(0.0, 0.5),
            y,
            area,
        })
    }

    /// Builds a point from arbitrary `(x, y)` with `y > 0`, reducing it to the
    /// domain first.
    pub fn reduced(x: f64, y: f64, area: f64) -> Result<Self> {
        check_area(area)?;
        let (x, y) = reduce_to_domain(x, y)?;
        Ok(Self { x, y, area })
    }

    pub fn square(area: f64) -> Result<Self> {
        Self::new(0.0, 1.0, area)
    }

    pub fn triangular(area: f64) -> Result<Self> {
        Self::new(0.5, TRIANGULAR_Y, area)
    }

    /// Rhombic lattice whose generators have equal length and enclose `theta`
    /// (radians, in `[pi/3, pi/2]`).
    pub fn rhombic(theta: f64, area: f64) -> Result<Self> {
        Self::new(theta.cos(), theta.sin(), area)
    }

    /// Rectangular lattice with aspect parameter `y >= 1`.
    pub fn rectangular(y: f64, area: f64) -> Result<Self> {
        Self::new(0.0, y, area)
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn with_area(&self, area: f64) -> Result<Self> {
        check_area(area)?;
        Ok(Self { area, ..*self })
    }

    /// Generators `(u, v)` in Cartesian coordinates.
    pub fn basis(&self) -> ([f64; 2], [f64; 2]) {
        let s = (self.area / self.y).sqrt();
        ([s, 0.0], [self.x * s, (self.area * self.y).sqrt()])
    }
}

pub(crate) fn check_area(area: f64) -> Result<()> {
    if area.is_finite() && area > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArea(area))
    }
}

/// Squared length `A [(m + x n)^2 / y + y n^2]` of the lattice vector `m u + n v`.
pub fn quadratic_form(m: i64, n: i64, p: &LatticePoint) -> Result<f64> {
    if m == 0 && n == 0 {
        return Err(Error::ZeroIndex);
    }
    let (m, n) = (m as f64, n as f64);
    let t = m + p.x * n;
    Ok(p.area * (t * t / p.y + p.y * n * n))
}

/// Maps `(x, y)` with `y > 0` to the point of the half modular domain that
/// describes the same lattice up to rotation and reflection, using
/// translations `x -> x - round(x)`, the inversion
/// `(x, y) -> (-x, y) / (x^2 + y^2)` and the mirror `x -> -x`.
pub fn reduce_to_domain(x: f64, y: f64) -> Result<(f64, f64)> {
    if !(x.is_finite() && y.is_finite()) {
        return Err(Error::InvalidPoint {
            x,
            y,
            reason: "coordinates must be finite",
        });
    }
    if y <= 0.0 {
        return Err(Error::InvalidPoint {
            x,
            y,
            reason: "y must be positive",
        });
    }
    let (mut x, mut y) = (x, y);
    for _ in 0..MAX_REDUCTION_STEPS {
        x -= x.round();
        let r2 = x * x + y * y;
        if r2 >= 1.0 {
            return Ok((x.abs(), y));
        }
        x = -x / r2;
        y /= r2;
    }
    Err(Error::ReductionLimit(MAX_REDUCTION_STEPS))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_form_examples() {
        let sq = LatticePoint::new(0.0, 1.0, 1.0).unwrap();
        assert_eq!(quadratic_form(1, 0, &sq).unwrap(), 1.0);

        let tri = LatticePoint::triangular(3f64.sqrt() / 2.0).unwrap();
        assert!((quadratic_form(0, 1, &tri).unwrap() - 1.0).abs() < 1e-15);

        let p = LatticePoint::new(0.3, 1.2, 2.5).unwrap();
        let expected = 2.5 * ((2.0f64 - 0.3).powi(2) / 1.2 + 1.2);
        assert!((quadratic_form(2, -1, &p).unwrap() - expected).abs() < 1e-13);
        assert!((expected - 9.020_833_333_333).abs() < 1e-9);
    }

    #[test]
    fn quadratic_form_rejects_origin() {
        let sq = LatticePoint::square(1.0).unwrap();
        assert_eq!(quadratic_form(0, 0, &sq), Err(Error::ZeroIndex));
    }

    #[test]
    fn reduce_examples() {
        let (x, y) = reduce_to_domain(0.7, 1.0).unwrap();
        assert!((x - 0.3).abs() < 1e-15 && (y - 1.0).abs() < 1e-15);
        let (x, y) = reduce_to_domain(0.0, 0.5).unwrap();
        assert!(x.abs() < 1e-15 && (y - 2.0).abs() < 1e-15);
        let (x, y) = reduce_to_domain(0.5, 0.9).unwrap();
        assert!((0.0..=0.5).contains(&x) && x * x + y * y >= 1.0);
    }

    #[test]
    fn reduce_rejects_bad_input() {
        assert!(reduce_to_domain(0.1, 0.0).is_err());
        assert!(reduce_to_domain(0.1, -1.0).is_err());
        assert!(reduce_to_domain(f64::NAN, 1.0).is_err());
        assert!(reduce_to_domain(0.1, f64::INFINITY).is_err());
    }

    #[test]
    fn reduce_deep_point_terminates() {
        let (x, y) = reduce_to_domain(0.123_456, 1e-4).unwrap();
        assert!((0.0..=0.5).contains(&x) && x * x + y * y >= 1.0);
    }

    #[test]
    fn constructor_validates_domain() {
        assert!(LatticePoint::new(0.6, 1.0, 1.0).is_err());
        assert!(LatticePoint::new(0.2, 0.9, 1.0).is_err());
        assert!(LatticePoint::new(0.0, 1.0, 0.0).is_err());
        assert!(LatticePoint::rhombic(70f64.to_radians(), 1.0).is_ok());
        let p = LatticePoint::reduced(-0.2, 0.8, 2.0).unwrap();
        assert!(p.x() >= 0.0 && p.x() <= 0.5);
        assert_eq!(p.area(), 2.0);
    }

    #[test]
    fn basis_spans_requested_area() {
        let p = LatticePoint::new(0.31, 1.7, 2.3).unwrap();
        let (u, v) = p.basis();
        assert!((u[0] * v[1] - u[1] * v[0] - 2.3).abs() < 1e-12);
        let q = quadratic_form(2, -3, &p).unwrap();
        let w = [2.0 * u[0] - 3.0 * v[0], 2.0 * u[1] - 3.0 * v[1]];
        assert!((w[0] * w[0] + w[1] * w[1] - q).abs() < 1e-12);
    }
}
