//! Lattice energies `E_f(x, y, A) = sum_{(m,n) != 0} f(Q(m, n))` and the two
//! classical families built on them: Epstein zeta and theta functions.

use serde::Serialize;

use crate::error::{check_tol, Error, Result};
use crate::jet::{energy_jet, Order};
use crate::lattice::LatticePoint;
use crate::potential::{Exponential, InversePower, LennardJones, LjParams, Potential};

/// A truncated lattice sum with its certificate: the exact sum lies within
/// `tail_bound` of `value`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SumResult {
    pub value: f64,
    pub truncation_radius: f64,
    pub tail_bound: f64,
}

/// `E_f` at a point of the half modular domain.
pub fn lattice_sum<P: Potential + ?Sized>(f: &P, p: &LatticePoint, tol: f64) -> Result<SumResult> {
    lattice_sum_raw(f, p.x(), p.y(), p.area(), tol)
}

/// `E_f` at arbitrary `(x, y)` with `y > 0`.
pub fn lattice_sum_raw<P: Potential + ?Sized>(
    f: &P,
    x: f64,
    y: f64,
    area: f64,
    tol: f64,
) -> Result<SumResult> {
    let jet = energy_jet(f, x, y, area, Order::Value, tol)?;
    Ok(SumResult {
        value: jet.value,
        truncation_radius: jet.radius,
        tail_bound: jet.tails[0],
    })
}

/// `zeta_L(s) = sum_{p != 0} |p|^-s`, defined for `s > 2`.
pub fn epstein_zeta(p: &LatticePoint, s: f64, tol: f64) -> Result<SumResult> {
    if !(s > 2.0) || !s.is_finite() {
        return Err(Error::Divergent { s, min: 2.0 });
    }
    lattice_sum(&InversePower::new(1.0, 0.5 * s)?, p, tol)
}

/// `theta_L(alpha) = sum_p exp(-pi alpha |p|^2)`, including `p = 0`.
pub fn theta_function(p: &LatticePoint, alpha: f64, tol: f64) -> Result<SumResult> {
    let f = Exponential::new(alpha)?;
    let mut r = lattice_sum(&f, p, tol)?;
    r.value += 1.0;
    Ok(r)
}

/// `a2 zeta_L(2 t2) - a1 zeta_L(2 t1)`.
pub fn lj_energy(params: &LjParams, p: &LatticePoint, tol: f64) -> Result<SumResult> {
    check_tol(tol)?;
    lattice_sum(&LennardJones::new(*params)?, p, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_rejects_divergent_exponent() {
        let p = LatticePoint::square(1.0).unwrap();
        assert!(matches!(
            epstein_zeta(&p, 2.0, 1e-8),
            Err(Error::Divergent { .. })
        ));
        assert!(epstein_zeta(&p, 1.5, 1e-8).is_err());
    }

    #[test]
    fn theta_rejects_bad_alpha() {
        let p = LatticePoint::square(1.0).unwrap();
        assert!(theta_function(&p, 0.0, 1e-8).is_err());
        assert!(theta_function(&p, -1.0, 1e-8).is_err());
    }

    #[test]
    fn tolerance_is_validated() {
        let p = LatticePoint::square(1.0).unwrap();
        assert!(matches!(
            epstein_zeta(&p, 6.0, 0.0),
            Err(Error::InvalidTolerance(_))
        ));
        assert!(lj_energy(&LjParams::classical(), &p, f64::NAN).is_err());
    }

    #[test]
    fn certificate_is_within_tolerance() {
        let p = LatticePoint::new(0.3, 1.2, 2.5).unwrap();
        let r = epstein_zeta(&p, 6.0, 1e-11).unwrap();
        assert!(r.tail_bound <= 1e-11 && r.truncation_radius > 0.0);
    }
}
