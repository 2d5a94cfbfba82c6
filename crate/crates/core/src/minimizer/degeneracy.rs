//! Bounds on the rectangular minimizer of the classical potential
//! `r^-6 - 2 r^-3` at large area: `X1(A)^(1/3) <= y_A <= X2(A)^(1/3)`, where
//! `X1 <= X2` are the roots of
//! `R_A(X) = -2 X^2 + 2 zeta(6) A^3 X + zeta(12) A^2 - 4 A^4`
//! and `zeta` is the Epstein zeta function of the unit square lattice.

use std::sync::OnceLock;

use serde::Serialize;

use crate::energy::epstein_zeta;
use crate::error::Result;
use crate::lattice::{check_area, LatticePoint};

const ZETA_TOL: f64 = 1e-13;

static SQUARE_ZETAS: OnceLock<(f64, f64)> = OnceLock::new();

/// `(zeta_Z2(6), zeta_Z2(12))` certified to `tol`; cached when `tol >= 1e-13`.
pub fn square_zetas(tol: f64) -> Result<(f64, f64)> {
    let compute = |tol: f64| -> Result<(f64, f64)> {
        let sq = LatticePoint::square(1.0)?;
        Ok((
            epstein_zeta(&sq, 6.0, tol)?.value,
            epstein_zeta(&sq, 12.0, tol)?.value,
        ))
    };
    if tol < ZETA_TOL {
        return compute(tol);
    }
    if let Some(z) = SQUARE_ZETAS.get() {
        return Ok(*z);
    }
    let z = compute(ZETA_TOL)?;
    Ok(*SQUARE_ZETAS.get_or_init(|| z))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DegeneracyBounds {
    pub area: f64,
    pub x1: f64,
    pub x2: f64,
    pub discriminant: f64,
    /// `discriminant > 0` and `x1 >= 1`.
    pub valid: bool,
}

impl DegeneracyBounds {
    /// `[X1^(1/3), X2^(1/3)]`.
    pub fn y_range(&self) -> (f64, f64) {
        (self.x1.cbrt(), self.x2.cbrt())
    }
}

/// `R_A(X)`.
pub fn r_polynomial(area: f64, x: f64, zeta6: f64, zeta12: f64) -> f64 {
    let a2 = area * area;
    -2.0 * x * x + 2.0 * zeta6 * a2 * area * x + zeta12 * a2 - 4.0 * a2 * a2
}

pub fn degeneracy_bounds(area: f64, tol: f64) -> Result<DegeneracyBounds> {
    check_area(area)?;
    let (z6, z12) = square_zetas(tol)?;
    let a2 = area * area;
    let a3 = a2 * area;
    let disc = 4.0 * z6 * z6 * a3 * a3 + 8.0 * (z12 * a2 - 4.0 * a2 * a2);
    if !(disc > 0.0) {
        return Ok(DegeneracyBounds {
            area,
            x1: f64::NAN,
            x2: f64::NAN,
            discriminant: disc,
            valid: false,
        });
    }
    let x2 = (2.0 * z6 * a3 + disc.sqrt()) / 4.0;
    // product of the roots, avoiding cancellation in the smaller one
    let x1 = (2.0 * a2 * a2 - 0.5 * z12 * a2) / x2;
    Ok(DegeneracyBounds {
        area,
        x1,
        x2,
        discriminant: disc,
        valid: x1 >= 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_are_invalid_at_small_area() {
        let b = degeneracy_bounds(1.2, 1e-12).unwrap();
        assert!(!b.valid);
        let b = degeneracy_bounds(5.0, 1e-12).unwrap();
        assert!(b.valid && b.x1 <= b.x2);
    }

    #[test]
    fn roots_solve_the_polynomial() {
        let (z6, z12) = square_zetas(1e-12).unwrap();
        for &a in &[5.0, 10.0, 100.0] {
            let b = degeneracy_bounds(a, 1e-12).unwrap();
            let scale = 2.0 * b.x2 * b.x2;
            assert!(r_polynomial(a, b.x1, z6, z12).abs() <= 1e-8 * scale);
            assert!(r_polynomial(a, b.x2, z6, z12).abs() <= 1e-8 * scale);
        }
    }
}
