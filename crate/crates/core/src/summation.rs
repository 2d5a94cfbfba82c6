//! Certified truncation of lattice sums `sum_{(m,n) != 0} w(m,n) g(Q(m,n))`.
//!
//! Terms with `|p| <= R` are enumerated row by row; the omitted tail is bounded
//! by comparison with a radial integral. For a lattice of area `A` whose
//! centred primitive cell fits in a disc of radius `delta`, and a radial
//! majorant `h` that is nonincreasing on `[R - 2 delta, inf)`,
//!
//! ```text
//! sum_{|p| > R} h(|p|) <= (2 pi / A) * int_{R - 2 delta}^inf h(u) (u + delta) du.
//! ```

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::potential::{Decay, Potential};

/// Largest number of lattice points a single sum may enumerate.
const MAX_POINTS: f64 = 2.0e9;

/// The form `Q(m, n) = A [(m + x n)^2 / y + y n^2]`, without the domain
/// restriction on `(x, y)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Form {
    pub x: f64,
    pub y: f64,
    pub area: f64,
}

impl Form {
    pub fn new(x: f64, y: f64, area: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && y > 0.0) {
            return Err(Error::InvalidPoint {
                x,
                y,
                reason: "need finite x and y > 0",
            });
        }
        crate::lattice::check_area(area)?;
        Ok(Self { x, y, area })
    }

    #[inline]
    pub fn q(&self, m: f64, n: f64) -> f64 {
        let t = m + self.x * n;
        self.area * (t * t / self.y + self.y * n * n)
    }

    /// `(k_m, k_n)` with `|m| <= k_m |p|` and `|n| <= k_n |p|`.
    pub fn index_bounds(&self) -> (f64, f64) {
        let ay = self.area * self.y;
        (
            ((self.x * self.x + self.y * self.y) / ay).sqrt(),
            1.0 / ay.sqrt(),
        )
    }

    /// Bound on `|m^a n^b|` in units of `|p|^(a+b)`.
    pub fn monomial(&self, a: i32, b: i32) -> f64 {
        let (km, kn) = self.index_bounds();
        km.powi(a) * kn.powi(b)
    }

    /// Radius of the smallest disc around its centre containing the primitive cell.
    pub fn half_diagonal(&self) -> f64 {
        let s = (self.area / self.y).sqrt();
        let v = [self.x * s, (self.area * self.y).sqrt()];
        let plus = ((s + v[0]).powi(2) + v[1] * v[1]).sqrt();
        let minus = ((s - v[0]).powi(2) + v[1] * v[1]).sqrt();
        0.5 * plus.max(minus)
    }
}

/// One contribution to a summand bound: `|term| <= weight * |p|^degree * envelope(|p|^2)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct TailTerm {
    pub weight: f64,
    pub degree: i32,
    pub decay: Decay,
}

impl TailTerm {
    pub fn new(weight: f64, degree: i32, decay: Decay) -> Self {
        Self {
            weight,
            degree,
            decay,
        }
    }

    pub fn check(&self) -> Result<()> {
        if let Decay::Power { exponent, .. } = self.decay {
            if !(2.0 * exponent - self.degree as f64 > 2.0) {
                return Err(Error::NonDecaying(format!(
                    "majorant |p|^{} * r^-{} is not summable in two dimensions",
                    self.degree, exponent
                )));
            }
        }
        Ok(())
    }

    /// `int_{start}^inf h(u) (u + delta) du`, or infinity when the majorant
    /// is not yet valid (or not yet monotone) at `start`.
    fn integral(&self, start: f64, delta: f64) -> f64 {
        if start <= 0.0 {
            return f64::INFINITY;
        }
        let d = self.degree as f64;
        match self.decay {
            Decay::Power {
                coeff,
                exponent,
                from,
            } => {
                if start * start < from {
                    return f64::INFINITY;
                }
                let e = 2.0 * exponent - d;
                coeff * (start.powf(2.0 - e) / (e - 2.0) + delta * start.powf(1.0 - e) / (e - 1.0))
            }
            Decay::Exponential { coeff, rate } => {
                // u^j e^{-b u^2} <= U^j e^{-b U^2} e^{-(2bU - j/U)(u - U)} for u >= U
                let g = |j: f64| {
                    let slope = 2.0 * rate * start - j / start;
                    if slope <= 0.0 {
                        f64::INFINITY
                    } else {
                        start.powf(j) * (-rate * start * start).exp() / slope
                    }
                };
                if 2.0 * rate * start * start <= d + 1.0 {
                    return f64::INFINITY;
                }
                coeff * (g(d + 1.0) + delta * g(d))
            }
        }
    }
}

/// Bound on the part of the sum with `|p| > radius`.
pub(crate) fn tail_bound(form: &Form, radius: f64, terms: &[TailTerm]) -> f64 {
    let delta = form.half_diagonal();
    let start = radius - 2.0 * delta;
    let scale = 2.0 * PI / form.area;
    terms
        .iter()
        .map(|t| scale * t.weight * t.integral(start, delta))
        .sum()
}

/// A truncation radius with its certified tails, one per component.
#[derive(Debug, Clone)]
pub(crate) struct Truncation {
    pub radius: f64,
    pub tails: Vec<f64>,
}

/// Smallest radius (up to bisection resolution) for which every component's
/// tail bound is at most `tol`.
pub(crate) fn certify(form: &Form, components: &[Vec<TailTerm>], tol: f64) -> Result<Truncation> {
    crate::error::check_tol(tol)?;
    for t in components.iter().flatten() {
        t.check()?;
    }
    let worst = |r: f64| {
        components
            .iter()
            .map(|c| tail_bound(form, r, c))
            .fold(0.0f64, f64::max)
    };
    let delta = form.half_diagonal();
    let from = components
        .iter()
        .flatten()
        .map(|t| match t.decay {
            Decay::Power { from, .. } => from.sqrt(),
            Decay::Exponential { .. } => 0.0,
        })
        .fold(0.0f64, f64::max);
    let r_min = 2.0 * delta + from.max(1e-3);
    let mut hi = 2.0 * delta + from.max(1.0);
    let mut lo = r_min;
    while !(worst(hi) <= tol) {
        lo = hi;
        hi *= 1.5;
        if PI * hi * hi / form.area > MAX_POINTS {
            return Err(Error::Convergence {
                tol,
                reason: format!(
                    "tail bound {:.3e} at radius {:.3e} would need more than {:.0e} lattice points",
                    worst(lo),
                    lo,
                    MAX_POINTS
                ),
            });
        }
    }
    for _ in 0..48 {
        if hi - lo <= 1e-9 * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if worst(mid) <= tol {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let tails = components.iter().map(|c| tail_bound(form, hi, c)).collect();
    Ok(Truncation { radius: hi, tails })
}

/// Neumaier-compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Visits every `(m, n) != (0, 0)` with `Q(m, n) <= radius^2` in the half
/// plane `n > 0` or `n = 0, m > 0`, calling `visit(m, n, Q, out)`, and returns
/// twice the compensated totals. The summand must be even under
/// `(m, n) -> (-m, -n)`.
pub(crate) fn accumulate(
    form: &Form,
    radius: f64,
    width: usize,
    mut visit: impl FnMut(f64, f64, f64, &mut [f64]),
) -> Vec<f64> {
    let mut acc = vec![Compensated::default(); width];
    let mut out = vec![0.0; width];
    let r2 = radius * radius;
    let ay = form.area * form.y;
    let n_max = (radius / ay.sqrt()).floor() as i64;
    for n in 0..=n_max {
        let nf = n as f64;
        let rem = r2 / form.area - form.y * nf * nf;
        if rem < 0.0 {
            continue;
        }
        let w = (form.y * rem).sqrt();
        let centre = -form.x * nf;
        let (m_lo, m_hi) = if n == 0 {
            (1, w.floor() as i64)
        } else {
            ((centre - w).ceil() as i64, (centre + w).floor() as i64)
        };
        for m in m_lo..=m_hi {
            let mf = m as f64;
            let q = form.q(mf, nf);
            out.iter_mut().for_each(|v| *v = 0.0);
            visit(mf, nf, q, &mut out);
            for (a, &v) in acc.iter_mut().zip(out.iter()) {
                a.add(v);
            }
        }
    }
    acc.iter().map(|a| 2.0 * a.value()).collect()
}

/// A monomial weight `coeff * m^m_pow * n^n_pow` applied to `f^(deriv)(Q)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PolyTerm {
    pub coeff: f64,
    pub m_pow: i32,
    pub n_pow: i32,
    pub deriv: usize,
}

impl PolyTerm {
    pub const fn new(coeff: f64, m_pow: i32, n_pow: i32, deriv: usize) -> Self {
        Self {
            coeff,
            m_pow,
            n_pow,
            deriv,
        }
    }
}

/// A certified value: `|value - exact| <= tail`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Certified {
    pub value: f64,
    pub tail: f64,
    pub radius: f64,
}

/// Sums `sum_{(m,n) != 0} sum_k coeff_k m^a_k n^b_k f^(d_k)(Q(m,n))` for each
/// component. When `exact` is given it replaces `Q` as the argument of `f`
/// and decides membership in the truncation disc, which keeps the summation
/// set invariant under every integral symmetry of an integral form.
pub(crate) fn polynomial_sums<P: Potential + ?Sized>(
    f: &P,
    form: &Form,
    comps: &[Vec<PolyTerm>],
    tol: f64,
    exact: Option<fn(f64, f64) -> f64>,
) -> Result<Vec<Certified>> {
    if comps.iter().flatten().any(|t| (t.m_pow + t.n_pow) % 2 != 0) {
        return Err(Error::NonDecaying(
            "monomial weights must have even total degree".into(),
        ));
    }
    let tails: Vec<Vec<TailTerm>> = comps
        .iter()
        .map(|c| {
            c.iter()
                .map(|t| {
                    TailTerm::new(
                        t.coeff.abs() * form.monomial(t.m_pow, t.n_pow),
                        t.m_pow + t.n_pow,
                        f.decay(t.deriv),
                    )
                })
                .collect()
        })
        .collect();
    let trunc = certify(form, &tails, tol)?;
    let r2 = trunc.radius * trunc.radius;
    let reach = match exact {
        Some(_) => trunc.radius * (1.0 + 1e-9) + 1e-9,
        None => trunc.radius,
    };
    let values = accumulate(form, reach, comps.len(), |m, n, q, out| {
        let q = match exact {
            Some(e) => {
                let q = e(m, n);
                if q > r2 {
                    return;
                }
                q
            }
            None => q,
        };
        let jet = f.jet(q);
        for (o, c) in out.iter_mut().zip(comps) {
            *o = c
                .iter()
                .map(|t| t.coeff * m.powi(t.m_pow) * n.powi(t.n_pow) * jet[t.deriv])
                .sum();
        }
    });
    Ok(values
        .into_iter()
        .zip(trunc.tails)
        .map(|(value, tail)| Certified {
            value,
            tail,
            radius: trunc.radius,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_diagonal_of_square_cell() {
        let f = Form::new(0.0, 1.0, 1.0).unwrap();
        assert!((f.half_diagonal() - 0.5 * 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn enumeration_counts_points_in_disc() {
        // Gauss circle problem: N(r) for Z^2 with r = 10 is 317 (origin included)
        let f = Form::new(0.0, 1.0, 1.0).unwrap();
        let total = accumulate(&f, 10.0, 1, |_, _, _, out| out[0] = 1.0);
        assert_eq!(total[0], 316.0);
    }

    #[test]
    fn enumeration_is_complete_for_skewed_forms() {
        let f = Form::new(0.37, 2.9, 1.7).unwrap();
        let radius: f64 = 6.0;
        let total = accumulate(&f, radius, 1, |_, _, _, out| out[0] = 1.0)[0];
        let mut brute = 0.0;
        for m in -60i64..=60 {
            for n in -60i64..=60 {
                if (m, n) != (0, 0) && f.q(m as f64, n as f64) <= radius * radius {
                    brute += 1.0;
                }
            }
        }
        assert_eq!(total, brute);
    }

    #[test]
    fn tail_bound_dominates_actual_tail() {
        // r^-3 on Z^2: compare sum over R < |p| <= 400 with the bound at R
        let f = Form::new(0.0, 1.0, 1.0).unwrap();
        let decay = Decay::Power {
            coeff: 1.0,
            exponent: 3.0,
            from: 0.0,
        };
        let term = [TailTerm::new(1.0, 0, decay)];
        for &r in &[5.0, 10.0, 30.0] {
            let near = accumulate(&f, r, 1, |_, _, q, out| out[0] = q.powi(-3))[0];
            let far = accumulate(&f, 400.0, 1, |_, _, q, out| out[0] = q.powi(-3))[0];
            assert!(far - near <= tail_bound(&f, r, &term));
        }
    }

    #[test]
    fn gaussian_tail_bound_dominates_actual_tail() {
        let f = Form::new(0.2, 1.3, 0.6).unwrap();
        let decay = Decay::Exponential {
            coeff: 1.0,
            rate: PI * 0.3,
        };
        let term = [TailTerm::new(1.0, 2, decay)];
        let kernel = |q: f64| q * (-PI * 0.3 * q).exp();
        for &r in &[3.0, 5.0] {
            let near = accumulate(&f, r, 1, |_, _, q, out| out[0] = kernel(q))[0];
            let far = accumulate(&f, 30.0, 1, |_, _, q, out| out[0] = kernel(q))[0];
            let bound = tail_bound(&f, r, &term);
            assert!(far - near <= bound, "{} > {}", far - near, bound);
        }
    }

    #[test]
    fn certify_rejects_slow_decay() {
        let f = Form::new(0.0, 1.0, 1.0).unwrap();
        let decay = Decay::Power {
            coeff: 1.0,
            exponent: 1.0,
            from: 0.0,
        };
        let err = certify(&f, &[vec![TailTerm::new(1.0, 0, decay)]], 1e-6).unwrap_err();
        assert!(matches!(err, Error::NonDecaying(_)));
        let decay = Decay::Power {
            coeff: 1.0,
            exponent: 2.5,
            from: 0.0,
        };
        assert!(certify(&f, &[vec![TailTerm::new(1.0, 4, decay)]], 1e-6).is_err());
    }

    #[test]
    fn certify_reports_unreachable_tolerance() {
        let f = Form::new(0.0, 1.0, 1.0).unwrap();
        let decay = Decay::Power {
            coeff: 1.0,
            exponent: 1.05,
            from: 0.0,
        };
        let err = certify(&f, &[vec![TailTerm::new(1.0, 0, decay)]], 1e-12).unwrap_err();
        assert!(matches!(err, Error::Convergence { .. }));
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut c = Compensated::default();
        c.add(1.0);
        for _ in 0..1000 {
            c.add(1e-17);
        }
        assert!((c.value() - (1.0 + 1e-14)).abs() < 1e-16);
    }
}
