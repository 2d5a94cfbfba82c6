//! Area thresholds for Lennard-Jones type potentials `a2 r^-t2 - a1 r^-t1`.
//!
//! * `A0`: the triangular point is a local minimum for `A < A0` and a local
//!   maximum for `A > A0`.
//! * `A1 < A2`: the square point is a local minimum exactly on `(A1, A2)`.
//! * `A_BZ`: below it the triangular lattice beats every other lattice of the
//!   same area.
//!
//! All four come from a handful of lattice sums over the square form
//! `m^2 + n^2` and the hexagonal form `m^2 + m n + n^2`.

use std::f64::consts::PI;

use serde::Serialize;
use statrs::function::gamma::gamma;

use crate::derivatives::{hex_form, hex_q, square_q};
use crate::error::{check_tol, Error, Result};
use crate::jet::Order;
use crate::lattice::{reduce_to_domain, TRIANGULAR_Y};
use crate::model::LjModel;
use crate::optimize::nelder_mead;
use crate::potential::{InversePower, LjParams};
use crate::summation::{polynomial_sums, Form, PolyTerm};

/// A value with a bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

impl Estimate {
    pub fn lower(&self) -> f64 {
        self.value - self.error
    }

    pub fn upper(&self) -> f64 {
        self.value + self.error
    }

    pub fn is_positive(&self) -> bool {
        self.lower() > 0.0
    }

    fn scaled(self, c: f64) -> Self {
        Self {
            value: c * self.value,
            error: c.abs() * self.error,
        }
    }

    fn minus(self, other: Self) -> Self {
        Self {
            value: self.value - other.value,
            error: self.error + other.error,
        }
    }
}

fn square_form() -> Form {
    Form {
        x: 0.0,
        y: 1.0,
        area: 1.0,
    }
}

/// Sums of monomials against `q^-s` over an integral form, one per entry of `weights`.
fn form_sums(hex: bool, s: f64, weights: &[&[(f64, i32, i32)]], tol: f64) -> Result<Vec<Estimate>> {
    let f = InversePower::new(1.0, s)?;
    let comps: Vec<Vec<PolyTerm>> = weights
        .iter()
        .map(|w| {
            w.iter()
                .map(|&(c, a, b)| PolyTerm::new(c, a, b, 0))
                .collect()
        })
        .collect();
    let (form, q): (Form, fn(f64, f64) -> f64) = if hex {
        (hex_form(), hex_q)
    } else {
        (square_form(), square_q)
    };
    let r = polynomial_sums(&f, &form, &comps, tol, Some(q))?;
    Ok(r.iter()
        .map(|c| Estimate {
            value: c.value,
            error: c.tail,
        })
        .collect())
}

fn require(s: f64, min: f64) -> Result<()> {
    if s > min && s.is_finite() {
        Ok(())
    } else {
        Err(Error::Divergent { s, min })
    }
}

/// `S1(s) = sum m^4 / (m^2 + m n + n^2)^s`, for `s > 3`.
pub fn s1(s: f64, tol: f64) -> Result<Estimate> {
    require(s, 3.0)?;
    Ok(form_sums(true, s, &[&[(1.0, 4, 0)]], tol)?[0])
}

/// `S2(s) = sum m^2 / (m^2 + n^2)^s`, for `s > 2`.
pub fn s2(s: f64, tol: f64) -> Result<Estimate> {
    require(s, 2.0)?;
    Ok(form_sums(false, s, &[&[(1.0, 2, 0)]], tol)?[0])
}

/// `S3(s) = sum m^2 n^2 / (m^2 + n^2)^s`, for `s > 3`.
pub fn s3(s: f64, tol: f64) -> Result<Estimate> {
    require(s, 3.0)?;
    Ok(form_sums(false, s, &[&[(1.0, 2, 2)]], tol)?[0])
}

/// `S4(s) = sum (n^2 - m^2)^2 / (m^2 + n^2)^s`, for `s > 3`.
pub fn s4(s: f64, tol: f64) -> Result<Estimate> {
    require(s, 3.0)?;
    Ok(form_sums(false, s, &[&[(1.0, 0, 4), (1.0, 4, 0), (-2.0, 2, 2)]], tol)?[0])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SSumTable {
    pub s: f64,
    pub s1: Estimate,
    pub s2: Estimate,
    pub s3: Estimate,
    pub s4: Estimate,
}

/// All four sums at the same exponent `s > 3`.
pub fn s_sums(s: f64, tol: f64) -> Result<SSumTable> {
    require(s, 3.0)?;
    let sq = form_sums(
        false,
        s,
        &[
            &[(1.0, 2, 0)],
            &[(1.0, 2, 2)],
            &[(1.0, 0, 4), (1.0, 4, 0), (-2.0, 2, 2)],
        ],
        tol,
    )?;
    Ok(SSumTable {
        s,
        s1: s1(s, tol)?,
        s2: sq[0],
        s3: sq[1],
        s4: sq[2],
    })
}

/// `|sum m^2 / q^(s+1) - S1(s+2)|` over the hexagonal form, for `s > 1`. The
/// two sums agree exactly, which turns the coefficient of the triangular
/// Hessian entry into `(s - 1)/2 S1(s + 2)`.
pub fn h_identity_residual(s: f64, tol: f64) -> Result<Estimate> {
    require(s, 1.0)?;
    let lhs = form_sums(true, s + 1.0, &[&[(1.0, 2, 0)]], tol)?[0];
    let rhs = s1(s + 2.0, tol)?;
    let d = lhs.minus(rhs);
    Ok(Estimate {
        value: d.value.abs(),
        error: d.error,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GK {
    pub s: f64,
    pub g: Estimate,
    pub k: Estimate,
}

/// `g(s) = S2(s+1) - 2(s+1) S3(s+2)` and `k(s) = (s+1) S4(s+2) - 2 S2(s+1)`, for `s > 1`.
pub fn g_and_k(s: f64, tol: f64) -> Result<GK> {
    require(s, 1.0)?;
    let a = s2(s + 1.0, tol)?;
    let b = form_sums(
        false,
        s + 2.0,
        &[&[(1.0, 2, 2)], &[(1.0, 0, 4), (1.0, 4, 0), (-2.0, 2, 2)]],
        tol,
    )?;
    let g = a.minus(b[0].scaled(2.0 * (s + 1.0)));
    let k = b[1].scaled(s + 1.0).minus(a.scaled(2.0));
    Ok(GK { s, g, k })
}

/// `g` and `k` at the loosest tolerance (from `1e-1` down to `1e-10`) that
/// certifies both signs; fails if even the tightest cannot.
pub fn certify_g_k_positive(s: f64) -> Result<GK> {
    let mut last = None;
    for e in 1..=10 {
        let r = g_and_k(s, 10f64.powi(-e))?;
        if r.g.is_positive() && r.k.is_positive() {
            return Ok(r);
        }
        last = Some(r);
    }
    Err(Error::Convergence {
        tol: 1e-10,
        reason: format!("could not certify g({s}) > 0 and k({s}) > 0: {last:?}"),
    })
}

/// The lower bound `(1 - (1 + 2s)/(1 + 2^(s+1))) sum m^4 / (m^2 + n^2)^(s+2)` for `g(s)`.
pub fn g_lower_bound(s: f64, tol: f64) -> Result<Estimate> {
    require(s, 1.0)?;
    let c = 1.0 - (1.0 + 2.0 * s) / (1.0 + 2f64.powf(s + 1.0));
    Ok(form_sums(false, s + 2.0, &[&[(1.0, 4, 0)]], tol)?[0].scaled(c))
}

/// `(N / D)^(1/p)` with interval propagation of the errors of `N` and `D`.
fn power_ratio(num: Estimate, den: Estimate, p: f64, what: &str) -> Result<Estimate> {
    if !(num.lower() > 0.0 && den.lower() > 0.0) {
        return Err(Error::Convergence {
            tol: num.error.max(den.error),
            reason: format!("{what}: ratio {num:?} / {den:?} is not certified positive"),
        });
    }
    let value = (num.value / den.value).powf(1.0 / p);
    let lo = (num.lower() / den.upper()).powf(1.0 / p);
    let hi = (num.upper() / den.lower()).powf(1.0 / p);
    Ok(Estimate {
        value,
        error: (value - lo).max(hi - value),
    })
}

/// `A0 = sqrt(3)/2 (a2 t2 (t2-1) S1(t2+2) / (a1 t1 (t1-1) S1(t1+2)))^(1/(t2-t1))`.
pub fn threshold_a0(params: &LjParams, tol: f64) -> Result<Estimate> {
    params.validate()?;
    let LjParams { a1, a2, t1, t2 } = *params;
    let num = s1(t2 + 2.0, tol)?.scaled(a2 * t2 * (t2 - 1.0));
    let den = s1(t1 + 2.0, tol)?.scaled(a1 * t1 * (t1 - 1.0));
    Ok(power_ratio(num, den, t2 - t1, "A0")?.scaled(TRIANGULAR_Y))
}

/// `A1 = (a2 t2 g(t2) / (a1 t1 g(t1)))^(1/(t2-t1))` and the same with `k` for `A2`.
pub fn thresholds_a1_a2(params: &LjParams, tol: f64) -> Result<(Estimate, Estimate)> {
    params.validate()?;
    let LjParams { a1, a2, t1, t2 } = *params;
    let lo = g_and_k(t1, tol)?;
    let hi = g_and_k(t2, tol)?;
    let a_1 = power_ratio(hi.g.scaled(a2 * t2), lo.g.scaled(a1 * t1), t2 - t1, "A1")?;
    let a_2 = power_ratio(hi.k.scaled(a2 * t2), lo.k.scaled(a1 * t1), t2 - t1, "A2")?;
    if a_1.upper() >= a_2.lower() {
        return Err(Error::InvalidParams(format!(
            "expected A1 < A2 but found A1 = {} and A2 = {} for {params}",
            a_1.value, a_2.value
        )));
    }
    Ok((a_1, a_2))
}

/// Largest `y` of the region searched for `A_BZ`.
pub const ABZ_Y_MAX: f64 = 4.0;
/// Radius of the disc around the triangular point excluded from the search.
pub const ABZ_EXCLUSION: f64 = 1e-3;
/// Minimal distance between the reported minimizer and the triangular point.
pub const ABZ_SEPARATION: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AbzResult {
    pub value: f64,
    pub error: f64,
    /// Reduced coordinates of the minimizing lattice.
    pub x: f64,
    pub y: f64,
    /// Minimal zeta-difference ratio, before taking the `1/(t2 - t1)` power.
    pub ratio: f64,
    /// Smallest ratio found on the line `y = ABZ_Y_MAX`.
    pub boundary_ratio: f64,
}

/// `a2 (Z_t2(L) - Z_t2(T)) / (a1 (Z_t1(L) - Z_t1(T)))` over unit-area lattices, where
/// `Z_t = sum |p|^(-2t)` and `T` is the triangular lattice.
pub struct AbzRatio {
    model: LjModel,
    tri: [f64; 2],
    tri_tol: f64,
}

impl AbzRatio {
    pub fn new(params: &LjParams) -> Result<Self> {
        let model = LjModel::new(*params)?;
        let tri_tol = 1e-14;
        let t = model.unit_jets(0.5, TRIANGULAR_Y, Order::Value, tri_tol)?;
        Ok(Self {
            model,
            tri: [t[0].value, t[1].value],
            tri_tol: t[0].tails[0].max(t[1].tails[0]),
        })
    }

    /// Numerator and denominator with their errors at reduced `(x, y)`.
    pub fn parts(&self, x: f64, y: f64, tol: f64) -> Result<(Estimate, Estimate)> {
        let LjParams { a1, a2, .. } = self.model.params();
        let z = self.model.unit_jets(x, y, Order::Value, tol)?;
        let num = Estimate {
            value: a2 * (z[1].value - self.tri[1]),
            error: a2 * (z[1].tails[0] + self.tri_tol),
        };
        let den = Estimate {
            value: a1 * (z[0].value - self.tri[0]),
            error: a1 * (z[0].tails[0] + self.tri_tol),
        };
        Ok((num, den))
    }

    pub fn ratio(&self, x: f64, y: f64, tol: f64) -> Result<f64> {
        let (n, d) = self.parts(x, y, tol)?;
        Ok(n.value / d.value)
    }

    /// Lower bound on the ratio, or `None` if the denominator is not certified positive.
    pub fn ratio_lower(&self, x: f64, y: f64, tol: f64) -> Result<Option<f64>> {
        let (n, d) = self.parts(x, y, tol)?;
        if d.lower() <= 0.0 {
            return Ok(None);
        }
        Ok(Some(
            n.lower()
                / if n.lower() >= 0.0 {
                    d.upper()
                } else {
                    d.lower()
                },
        ))
    }

    fn excluded(x: f64, y: f64) -> bool {
        (x - 0.5).hypot(y - TRIANGULAR_Y) < ABZ_EXCLUSION
    }
}

/// Grid of `(x, y)` in `{0 <= x <= 1/2, sqrt(1 - x^2) <= y <= ABZ_Y_MAX}`.
pub fn abz_grid(n: usize) -> Vec<(f64, f64)> {
    let mut pts = Vec::with_capacity(n * n);
    for i in 0..n {
        let x = 0.5 * i as f64 / (n - 1) as f64;
        let y0 = (1.0 - x * x).sqrt();
        for j in 0..n {
            pts.push((x, y0 + (ABZ_Y_MAX - y0) * j as f64 / (n - 1) as f64));
        }
    }
    pts
}

/// `inf_{L != T, |L| = 1} ratio(L)^(1/(t2 - t1))`, located by an 80 x 80 grid
/// at a coarse tolerance, simplex descent from the five best cells and a final
/// simplex polish at `tol`.
pub fn threshold_a_bz(params: &LjParams, tol: f64) -> Result<AbzResult> {
    params.validate()?;
    check_tol(tol)?;
    let ratio = AbzRatio::new(params)?;
    let coarse = tol.max(1e-8);
    let mut cells = Vec::new();
    for (x, y) in abz_grid(80) {
        if AbzRatio::excluded(x, y) {
            continue;
        }
        cells.push((ratio.ratio(x, y, coarse)?, x, y));
    }
    cells.sort_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then(a.1.total_cmp(&b.1))
            .then(a.2.total_cmp(&b.2))
    });
    let boundary_ratio = cells
        .iter()
        .filter(|c| c.2 == ABZ_Y_MAX)
        .map(|c| c.0)
        .fold(f64::INFINITY, f64::min);

    let objective = |p: [f64; 2], tol: f64| -> Result<f64> {
        if !(p[1] > 0.0) {
            return Ok(f64::INFINITY);
        }
        let (x, y) = reduce_to_domain(p[0], p[1])?;
        if y > ABZ_Y_MAX || AbzRatio::excluded(x, y) {
            return Ok(f64::INFINITY);
        }
        ratio.ratio(x, y, tol)
    };
    let mut best: Option<(f64, [f64; 2])> = None;
    for &(_, x, y) in cells.iter().take(5) {
        let r = nelder_mead(|p| objective(p, coarse), [x, y], [5e-3, 5e-3], 1e-6, 400)?;
        if best.is_none_or(|(v, _)| r.value < v) {
            best = Some((r.value, r.point));
        }
    }
    let (_, start) = best.ok_or_else(|| Error::Search("empty A_BZ grid".into()))?;
    let r = nelder_mead(|p| objective(p, tol), start, [1e-4, 1e-4], 1e-9, 600)?;
    let (x, y) = reduce_to_domain(r.point[0], r.point[1])?;
    let min_ratio = r.value;
    if !min_ratio.is_finite() {
        return Err(Error::Search(
            "A_BZ polishing left the search region".into(),
        ));
    }
    if (x - 0.5).hypot(y - TRIANGULAR_Y) <= ABZ_SEPARATION {
        return Err(Error::Search(format!(
            "A_BZ minimizer ({x}, {y}) is too close to the triangular point"
        )));
    }
    if boundary_ratio <= min_ratio {
        return Err(Error::Search(format!(
            "ratio on y = {ABZ_Y_MAX} ({boundary_ratio}) does not exceed the interior minimum {min_ratio}"
        )));
    }
    let (num, den) = ratio.parts(x, y, tol)?;
    let p = params.t2 - params.t1;
    let est = power_ratio(num, den, p, "A_BZ")?;
    Ok(AbzResult {
        value: est.value,
        error: est.error,
        x,
        y,
        ratio: min_ratio,
        boundary_ratio,
    })
}

/// Outcome of checking `ratio >= min_ratio` on a verification grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AbzVerification {
    pub checked: usize,
    pub excluded: usize,
    /// Points whose certified lower bound stayed below `min_ratio * (1 - slack)`.
    pub violations: usize,
    /// Smallest certified lower bound divided by `min_ratio`.
    pub worst_relative: f64,
}

/// Checks with certified bounds that the ratio stays above `result.ratio`
/// (up to relative `slack`) on an `n x n` grid, tightening tolerances only
/// where the bound is inconclusive.
pub fn verify_a_bz(
    params: &LjParams,
    result: &AbzResult,
    n: usize,
    slack: f64,
) -> Result<AbzVerification> {
    let ratio = AbzRatio::new(params)?;
    let target = result.ratio * (1.0 - slack);
    let mut out = AbzVerification {
        checked: 0,
        excluded: 0,
        violations: 0,
        worst_relative: f64::INFINITY,
    };
    for (x, y) in abz_grid(n) {
        if AbzRatio::excluded(x, y) {
            out.excluded += 1;
            continue;
        }
        out.checked += 1;
        let mut best = f64::NEG_INFINITY;
        for tol in [1e-5, 1e-7, 1e-9, 1e-11, 1e-13] {
            if let Some(lo) = ratio.ratio_lower(x, y, tol)? {
                best = best.max(lo);
                if lo >= target {
                    break;
                }
            }
        }
        if best < target {
            out.violations += 1;
        }
        out.worst_relative = out.worst_relative.min(best / result.ratio);
    }
    Ok(out)
}

/// `pi (a2 Gamma(t1) / (a1 Gamma(t2)))^(1/(t2-t1))`: below this area the
/// triangular lattice is known to be the unique minimizer.
pub fn proven_triangular_bound(params: &LjParams) -> Result<f64> {
    params.validate()?;
    let LjParams { a1, a2, t1, t2 } = *params;
    Ok(PI * (a2 * gamma(t1) / (a1 * gamma(t2))).powf(1.0 / (t2 - t1)))
}

/// `pi^-t2 Gamma(t2) t2 <= pi^-t1 Gamma(t1) t1`.
pub fn global_optimality_condition(params: &LjParams) -> Result<bool> {
    params.validate()?;
    let LjParams { t1, t2, .. } = *params;
    let side = |t: f64| PI.powf(-t) * gamma(t) * t;
    Ok(side(t2) <= side(t1))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdSet {
    pub params: LjParams,
    pub a0: Estimate,
    pub a1: Estimate,
    pub a2: Estimate,
    pub a_bz: Option<AbzResult>,
}

pub fn compute_thresholds(params: &LjParams, tol: f64, with_a_bz: bool) -> Result<ThresholdSet> {
    check_tol(tol)?;
    let a0 = threshold_a0(params, tol)?;
    let (a1, a2) = thresholds_a1_a2(params, tol)?;
    let a_bz = if with_a_bz {
        Some(threshold_a_bz(params, tol)?)
    } else {
        None
    };
    Ok(ThresholdSet {
        params: *params,
        a0,
        a1,
        a2,
        a_bz,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_reject_small_exponents() {
        assert!(s1(3.0, 1e-8).is_err());
        assert!(s2(2.0, 1e-8).is_err());
        assert!(s_sums(2.9, 1e-8).is_err());
        assert!(g_and_k(1.0, 1e-8).is_err());
    }

    #[test]
    fn proven_bound_for_classical_parameters() {
        let b = proven_triangular_bound(&LjParams::classical()).unwrap();
        assert!((b - PI / 120f64.cbrt()).abs() < 1e-12);
        assert!((b - 0.63693).abs() < 1e-5);
    }

    #[test]
    fn power_ratio_propagates_errors() {
        let n = Estimate {
            value: 8.0,
            error: 0.08,
        };
        let d = Estimate {
            value: 1.0,
            error: 0.0,
        };
        let r = power_ratio(n, d, 3.0, "test").unwrap();
        assert!((r.value - 2.0).abs() < 1e-15);
        assert!(r.error > 0.0 && r.error < 0.01);
        assert!(power_ratio(
            Estimate {
                value: 1.0,
                error: 2.0
            },
            d,
            1.0,
            "test"
        )
        .is_err());
    }
}
