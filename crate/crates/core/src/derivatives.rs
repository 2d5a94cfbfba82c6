//! First and second derivatives of `(x, y) -> E_f(x, y, A)` and the local
//! stability of the square point `(0, 1)` and the triangular point
//! `(1/2, sqrt(3)/2)`.

use std::f64::consts::SQRT_2;

use serde::Serialize;

use crate::energy::SumResult;
use crate::error::{Error, Result};
use crate::jet::{energy_jet, Gradient2, Hessian2, Order};
use crate::lattice::{LatticePoint, TRIANGULAR_Y};
use crate::potential::{InversePower, Potential};
use crate::summation::{polynomial_sums, Certified, Form, PolyTerm};

/// Relative size below which a Hessian eigenvalue carries no sign.
pub const DEGENERATE_RELATIVE: f64 = 1e-9;

pub fn grad_energy<P: Potential + ?Sized>(f: &P, p: &LatticePoint, tol: f64) -> Result<Gradient2> {
    Ok(energy_jet(f, p.x(), p.y(), p.area(), Order::Gradient, tol)?.gradient)
}

pub fn hessian_energy<P: Potential + ?Sized>(
    f: &P,
    p: &LatticePoint,
    tol: f64,
) -> Result<Hessian2> {
    Ok(energy_jet(f, p.x(), p.y(), p.area(), Order::Hessian, tol)?.hessian)
}

fn to_sum(c: Certified) -> SumResult {
    SumResult {
        value: c.value,
        truncation_radius: c.radius,
        tail_bound: c.tail,
    }
}

/// `(K1, K2)` with `d2E/dx2 (0, 1, A) = 2 A K1` and `d2E/dy2 (0, 1, A) = A K2`.
pub fn square_hessian_diagonal<P: Potential + ?Sized>(
    f: &P,
    area: f64,
    tol: f64,
) -> Result<(SumResult, SumResult)> {
    let form = Form::new(0.0, 1.0, area)?;
    let k1 = vec![
        PolyTerm::new(1.0, 0, 2, 1),
        PolyTerm::new(2.0 * area, 2, 2, 2),
    ];
    let k2 = vec![
        PolyTerm::new(2.0, 2, 0, 1),
        PolyTerm::new(area, 0, 4, 2),
        PolyTerm::new(area, 4, 0, 2),
        PolyTerm::new(-2.0 * area, 2, 2, 2),
    ];
    let s = polynomial_sums(f, &form, &[k1, k2], tol, None)?;
    Ok((to_sum(s[0]), to_sum(s[1])))
}

/// `T_f(A) = d2E/dx2 = d2E/dy2` at the triangular point.
pub fn triangular_hessian_entry<P: Potential + ?Sized>(
    f: &P,
    area: f64,
    tol: f64,
) -> Result<SumResult> {
    let form = Form::new(0.5, TRIANGULAR_Y, area)?;
    let root3 = 3f64.sqrt();
    let t = vec![
        PolyTerm::new(4.0 * area / root3, 0, 2, 1),
        PolyTerm::new(4.0 * area * area / 3.0, 0, 4, 2),
    ];
    Ok(to_sum(polynomial_sums(f, &form, &[t], tol, None)?[0]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Site {
    Square,
    Triangular,
}

impl Site {
    pub fn point(self, area: f64) -> Result<LatticePoint> {
        match self {
            Site::Square => LatticePoint::square(area),
            Site::Triangular => LatticePoint::triangular(area),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    LocalMin,
    LocalMax,
    Saddle,
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StabilityReport {
    pub site: Site,
    pub point: LatticePoint,
    pub hessian: Hessian2,
    pub verdict: Verdict,
    /// Smallest eigenvalue magnitude of the Hessian.
    pub margin: f64,
    /// Largest truncation bound among the Hessian entries.
    pub tail_bound: f64,
}

/// Verdict from the eigenvalues of `h`, given certified entry errors `tail`.
pub fn verdict_of(h: &Hessian2, tail: f64) -> (Verdict, f64) {
    let (lo, hi) = h.eigenvalues();
    let margin = lo.abs().min(hi.abs());
    let scale = h.dxx.abs() + h.dyy.abs();
    // each eigenvalue moves by at most sqrt(2) times the largest entry error
    if margin <= DEGENERATE_RELATIVE * scale || margin <= SQRT_2 * tail {
        return (Verdict::Degenerate, margin);
    }
    let v = match (lo > 0.0, hi > 0.0) {
        (true, true) => Verdict::LocalMin,
        (false, false) => Verdict::LocalMax,
        _ => Verdict::Saddle,
    };
    (v, margin)
}

pub fn classify_point<P: Potential + ?Sized>(
    f: &P,
    site: Site,
    area: f64,
    tol: f64,
) -> Result<StabilityReport> {
    let point = site.point(area)?;
    let jet = energy_jet(f, point.x(), point.y(), area, Order::Hessian, tol)?;
    let tail = jet.hessian_tail();
    let (verdict, margin) = verdict_of(&jet.hessian, tail);
    Ok(StabilityReport {
        site,
        point,
        hessian: jet.hessian,
        verdict,
        margin,
        tail_bound: tail,
    })
}

/// The Hessian entries whose sign changes define the stability thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StabilityEntry {
    /// `T_f(A)` at the triangular point.
    Triangular,
    /// `K1(A)` at the square point.
    SquareX,
    /// `K2(A)` at the square point.
    SquareY,
}

pub fn stability_entry<P: Potential + ?Sized>(
    f: &P,
    entry: StabilityEntry,
    area: f64,
    tol: f64,
) -> Result<SumResult> {
    match entry {
        StabilityEntry::Triangular => triangular_hessian_entry(f, area, tol),
        StabilityEntry::SquareX => Ok(square_hessian_diagonal(f, area, tol)?.0),
        StabilityEntry::SquareY => Ok(square_hessian_diagonal(f, area, tol)?.1),
    }
}

/// Bisection for the sign change of `entry` on `[lo, hi]`, down to a
/// bracket of width `xtol`.
pub fn bisect_stability_root<P: Potential + ?Sized>(
    f: &P,
    entry: StabilityEntry,
    mut lo: f64,
    mut hi: f64,
    xtol: f64,
    tol: f64,
) -> Result<f64> {
    let sign = |a: f64| -> Result<bool> { Ok(stability_entry(f, entry, a, tol)?.value > 0.0) };
    let s_lo = sign(lo)?;
    if s_lo == sign(hi)? {
        return Err(Error::Search(format!(
            "{entry:?} has no sign change on [{lo}, {hi}]"
        )));
    }
    while hi - lo > xtol {
        let mid = 0.5 * (lo + hi);
        if sign(mid)? == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `m^2 + m n + n^2`, exact for the index ranges used here.
pub(crate) fn hex_q(m: f64, n: f64) -> f64 {
    m * m + m * n + n * n
}

/// `m^2 + n^2`.
pub(crate) fn square_q(m: f64, n: f64) -> f64 {
    m * m + n * n
}

/// The form with `Q = m^2 + m n + n^2`.
pub(crate) fn hex_form() -> Form {
    Form {
        x: 0.5,
        y: TRIANGULAR_Y,
        area: TRIANGULAR_Y,
    }
}

/// Residuals of three identities satisfied by `F(q) = q^-s` over the
/// hexagonal form `q = m^2 + m n + n^2`:
/// `sum m n F = -1/2 sum n^2 F`, `sum m n^3 F = -1/2 sum n^4 F` and
/// `sum m^2 n^2 F = 1/2 sum n^4 F`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LatsumResiduals {
    pub s: f64,
    pub first: f64,
    pub second: f64,
    pub third: f64,
    /// Largest truncation bound among the sums involved.
    pub tail_bound: f64,
}

impl LatsumResiduals {
    pub fn max(&self) -> f64 {
        self.first.max(self.second).max(self.third)
    }
}

pub fn check_latsum_identities(s: f64, tol: f64) -> Result<LatsumResiduals> {
    if !(s > 3.0) || !s.is_finite() {
        return Err(Error::Divergent { s, min: 3.0 });
    }
    let f = InversePower::new(1.0, s)?;
    let comps: Vec<Vec<PolyTerm>> = [(1, 1), (0, 2), (1, 3), (0, 4), (2, 2)]
        .iter()
        .map(|&(a, b)| vec![PolyTerm::new(1.0, a, b, 0)])
        .collect();
    let r = polynomial_sums(&f, &hex_form(), &comps, tol, Some(hex_q))?;
    let v: Vec<f64> = r.iter().map(|c| c.value).collect();
    Ok(LatsumResiduals {
        s,
        first: (v[0] + 0.5 * v[1]).abs(),
        second: (v[2] + 0.5 * v[3]).abs(),
        third: (v[4] - 0.5 * v[3]).abs(),
        tail_bound: r.iter().map(|c| c.tail).fold(0.0, f64::max),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::{LennardJones, LjParams};

    #[test]
    fn latsum_rejects_small_exponent() {
        assert!(check_latsum_identities(3.0, 1e-8).is_err());
        assert!(check_latsum_identities(2.5, 1e-8).is_err());
    }

    #[test]
    fn verdict_signs() {
        let h = Hessian2 {
            dxx: 1.0,
            dyy: 2.0,
            dxy: 0.0,
        };
        assert_eq!(verdict_of(&h, 0.0).0, Verdict::LocalMin);
        let h = Hessian2 {
            dxx: -1.0,
            dyy: -2.0,
            dxy: 0.0,
        };
        assert_eq!(verdict_of(&h, 0.0).0, Verdict::LocalMax);
        let h = Hessian2 {
            dxx: -1.0,
            dyy: 2.0,
            dxy: 0.0,
        };
        assert_eq!(verdict_of(&h, 0.0).0, Verdict::Saddle);
        let h = Hessian2 {
            dxx: 1e-12,
            dyy: 2.0,
            dxy: 0.0,
        };
        assert_eq!(verdict_of(&h, 0.0).0, Verdict::Degenerate);
        let h = Hessian2 {
            dxx: 1e-3,
            dyy: 2.0,
            dxy: 0.0,
        };
        assert_eq!(verdict_of(&h, 1e-2).0, Verdict::Degenerate);
    }

    #[test]
    fn square_diagonal_matches_general_hessian() {
        let f = LennardJones::new(LjParams::classical()).unwrap();
        let area = 1.1;
        let (k1, k2) = square_hessian_diagonal(&f, area, 1e-12).unwrap();
        let h = hessian_energy(&f, &LatticePoint::square(area).unwrap(), 1e-12).unwrap();
        assert!((2.0 * area * k1.value - h.dxx).abs() <= 1e-9 * h.dxx.abs().max(1.0));
        assert!((area * k2.value - h.dyy).abs() <= 1e-9 * h.dyy.abs().max(1.0));
    }
}
