//! Radial interaction potentials `f(r)`, where `r` is the *squared* distance.
//!
//! Every potential reports a [`Decay`] envelope for `f`, `f'` and `f''`. The
//! envelopes drive the certified truncation of lattice sums.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper envelope for `|g(r)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Decay {
    /// `|g(r)| <= coeff * r^(-exponent)` for every `r >= from`.
    Power {
        coeff: f64,
        exponent: f64,
        from: f64,
    },
    /// `|g(r)| <= coeff * exp(-rate * r)` for every `r > 0`.
    Exponential { coeff: f64, rate: f64 },
}

impl Decay {
    pub fn bound(&self, r: f64) -> f64 {
        match *self {
            Decay::Power {
                coeff, exponent, ..
            } => coeff * r.powf(-exponent),
            Decay::Exponential { coeff, rate } => coeff * (-rate * r).exp(),
        }
    }
}

/// A potential of the class used throughout the crate: `C^2` on `(0, inf)`
/// with `|f^(k)(r)| = O(r^(-eta_k - k))`, `eta_k > 1`.
pub trait Potential: Sync {
    fn value(&self, r: f64) -> f64;
    fn first(&self, r: f64) -> f64;
    fn second(&self, r: f64) -> f64;

    /// Envelope of the derivative of order `order` (0, 1 or 2).
    fn decay(&self, order: usize) -> Decay;

    /// `[f(r), f'(r), f''(r)]`; override when the three share work.
    fn jet(&self, r: f64) -> [f64; 3] {
        [self.value(r), self.first(r), self.second(r)]
    }

    /// The exponents `eta_k` of the decay class. Exponentially decaying
    /// potentials report infinity.
    fn decay_exponents(&self) -> [f64; 3] {
        let mut eta = [f64::INFINITY; 3];
        for (k, e) in eta.iter_mut().enumerate() {
            if let Decay::Power { exponent, .. } = self.decay(k) {
                *e = exponent - k as f64;
            }
        }
        eta
    }
}

impl<P: Potential + ?Sized> Potential for &P {
    fn value(&self, r: f64) -> f64 {
        (**self).value(r)
    }
    fn first(&self, r: f64) -> f64 {
        (**self).first(r)
    }
    fn second(&self, r: f64) -> f64 {
        (**self).second(r)
    }
    fn decay(&self, order: usize) -> Decay {
        (**self).decay(order)
    }
    fn jet(&self, r: f64) -> [f64; 3] {
        (**self).jet(r)
    }
}

/// Checks numerically that `|f^(k)(r)| * r^(eta_k + k)` stays below the
/// envelope coefficient on a range of large `r`.
pub fn spot_check_decay<P: Potential + ?Sized>(f: &P) -> bool {
    let samples = [1e1, 1e2, 1e3, 1e4, 1e5];
    (0..3).all(|k| {
        let env = f.decay(k);
        samples.iter().all(|&r| {
            let jet = f.jet(r);
            let v = jet[k].abs();
            match env {
                Decay::Power { from, .. } if r < from => true,
                _ => v <= env.bound(r) * (1.0 + 1e-12),
            }
        })
    })
}

/// `r^(-t)`, using integer powers when `t` is integral.
#[derive(Debug, Clone, Copy)]
pub(crate) struct NegPow {
    t: f64,
    int: Option<i32>,
}

impl NegPow {
    pub(crate) fn new(t: f64) -> Self {
        let int = (t.fract() == 0.0 && t.abs() < 64.0).then_some(t as i32);
        Self { t, int }
    }

    #[inline]
    pub(crate) fn eval(&self, r: f64) -> f64 {
        match self.int {
            Some(k) => r.powi(-k),
            None => r.powf(-self.t),
        }
    }
}

/// Rising factorial `t (t + 1) ... (t + k - 1)`.
fn rising(t: f64, k: usize) -> f64 {
    (0..k).map(|i| t + i as f64).product()
}

/// `coeff * r^(-exponent)`.
#[derive(Debug, Clone, Copy)]
pub struct InversePower {
    coeff: f64,
    exponent: f64,
    pow: NegPow,
}

impl InversePower {
    pub fn new(coeff: f64, exponent: f64) -> Result<Self> {
        if !(exponent.is_finite() && exponent > 0.0 && coeff.is_finite()) {
            return Err(Error::NonDecaying(format!(
                "r^-{exponent} with coefficient {coeff}"
            )));
        }
        Ok(Self {
            coeff,
            exponent,
            pow: NegPow::new(exponent),
        })
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }
}

impl Potential for InversePower {
    fn value(&self, r: f64) -> f64 {
        self.coeff * self.pow.eval(r)
    }
    fn first(&self, r: f64) -> f64 {
        -self.exponent * self.value(r) / r
    }
    fn second(&self, r: f64) -> f64 {
        self.exponent * (self.exponent + 1.0) * self.value(r) / (r * r)
    }
    fn jet(&self, r: f64) -> [f64; 3] {
        let v = self.coeff * self.pow.eval(r);
        let s = self.exponent;
        let inv = 1.0 / r;
        [v, -s * v * inv, s * (s + 1.0) * v * inv * inv]
    }
    fn decay(&self, order: usize) -> Decay {
        Decay::Power {
            coeff: self.coeff.abs() * rising(self.exponent, order),
            exponent: self.exponent + order as f64,
            from: 0.0,
        }
    }
}

/// Gaussian kernel `exp(-pi * alpha * r)` behind the lattice theta function.
#[derive(Debug, Clone, Copy)]
pub struct Exponential {
    alpha: f64,
}

impl Exponential {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::NonDecaying(format!(
                "exp(-pi alpha r) with alpha = {alpha}"
            )));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

impl Potential for Exponential {
    fn value(&self, r: f64) -> f64 {
        (-PI * self.alpha * r).exp()
    }
    fn first(&self, r: f64) -> f64 {
        -PI * self.alpha * self.value(r)
    }
    fn second(&self, r: f64) -> f64 {
        (PI * self.alpha).powi(2) * self.value(r)
    }
    fn jet(&self, r: f64) -> [f64; 3] {
        let k = PI * self.alpha;
        let v = (-k * r).exp();
        [v, -k * v, k * k * v]
    }
    fn decay(&self, order: usize) -> Decay {
        let rate = PI * self.alpha;
        Decay::Exponential {
            coeff: rate.powi(order as i32),
            rate,
        }
    }
}

/// Parameters `a = (a1, a2)`, `t = (t1, t2)` of the Lennard-Jones type
/// potential `a2 r^(-t2) - a1 r^(-t1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LjParams {
    pub a1: f64,
    pub a2: f64,
    pub t1: f64,
    pub t2: f64,
}

impl LjParams {
    pub fn new(a1: f64, a2: f64, t1: f64, t2: f64) -> Result<Self> {
        let p = Self { a1, a2, t1, t2 };
        p.validate()?;
        Ok(p)
    }

    /// `r^-6 - 2 r^-3`, i.e. the 12-6 potential in the squared distance.
    pub fn classical() -> Self {
        Self {
            a1: 2.0,
            a2: 1.0,
            t1: 3.0,
            t2: 6.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.a1, self.a2, self.t1, self.t2]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidParams("parameters must be finite".into()));
        }
        if !(self.a1 > 0.0 && self.a2 > 0.0) {
            return Err(Error::InvalidParams(format!(
                "strengths must be positive, got a1 = {}, a2 = {}",
                self.a1, self.a2
            )));
        }
        if !(1.0 < self.t1 && self.t1 < self.t2) {
            return Err(Error::InvalidParams(format!(
                "exponents must satisfy 1 < t1 < t2, got t1 = {}, t2 = {}",
                self.t1, self.t2
            )));
        }
        Ok(())
    }

    /// Same exponents, strengths in the classical ratio `a1 = 2 a2`.
    pub fn is_classical_shape(&self) -> bool {
        self.t1 == 3.0 && self.t2 == 6.0 && (self.a1 - 2.0 * self.a2).abs() <= 1e-14 * self.a1
    }
}

impl fmt::Display for LjParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "a=({}, {}), t=({}, {})",
            self.a1, self.a2, self.t1, self.t2
        )
    }
}

/// The Lennard-Jones type potential itself. Strength ratios are not checked
/// here so that degenerate single-term cases such as `a1 = 0` can be built
/// through [`LennardJones::unchecked`].
#[derive(Debug, Clone, Copy)]
pub struct LennardJones {
    params: LjParams,
    p1: NegPow,
    p2: NegPow,
}

impl LennardJones {
    pub fn new(params: LjParams) -> Result<Self> {
        params.validate()?;
        Ok(Self::unchecked(params))
    }

    pub fn unchecked(params: LjParams) -> Self {
        Self {
            params,
            p1: NegPow::new(params.t1),
            p2: NegPow::new(params.t2),
        }
    }

    pub fn params(&self) -> LjParams {
        self.params
    }
}

impl Potential for LennardJones {
    fn value(&self, r: f64) -> f64 {
        self.jet(r)[0]
    }
    fn first(&self, r: f64) -> f64 {
        self.jet(r)[1]
    }
    fn second(&self, r: f64) -> f64 {
        self.jet(r)[2]
    }
    fn jet(&self, r: f64) -> [f64; 3] {
        let LjParams { a1, a2, t1, t2 } = self.params;
        let w1 = a1 * self.p1.eval(r);
        let w2 = a2 * self.p2.eval(r);
        let inv = 1.0 / r;
        [
            w2 - w1,
            (t1 * w1 - t2 * w2) * inv,
            (t2 * (t2 + 1.0) * w2 - t1 * (t1 + 1.0) * w1) * inv * inv,
        ]
    }
    fn decay(&self, order: usize) -> Decay {
        let LjParams { a1, a2, t1, t2 } = self.params;
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        Decay::Power {
            coeff: a1.abs() * rising(t1, order) + a2.abs() * rising(t2, order),
            exponent: lo + order as f64,
            // both terms are dominated by r^-lo once r >= 1
            from: if lo < hi { 1.0 } else { 0.0 },
        }
    }
}

type RadialFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// A potential assembled from closures and explicit envelopes.
pub struct FnPotential {
    f: RadialFn,
    df: RadialFn,
    d2f: RadialFn,
    decay: [Decay; 3],
}

impl FnPotential {
    pub fn new(
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        df: impl Fn(f64) -> f64 + Send + Sync + 'static,
        d2f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        decay: [Decay; 3],
    ) -> Self {
        Self {
            f: Box::new(f),
            df: Box::new(df),
            d2f: Box::new(d2f),
            decay,
        }
    }
}

impl Potential for FnPotential {
    fn value(&self, r: f64) -> f64 {
        (self.f)(r)
    }
    fn first(&self, r: f64) -> f64 {
        (self.df)(r)
    }
    fn second(&self, r: f64) -> f64 {
        (self.d2f)(r)
    }
    fn decay(&self, order: usize) -> Decay {
        self.decay[order]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lj_params_validation() {
        assert!(LjParams::new(2.0, 1.0, 3.0, 6.0).is_ok());
        assert!(LjParams::new(0.0, 1.0, 3.0, 6.0).is_err());
        assert!(LjParams::new(2.0, 1.0, 6.0, 3.0).is_err());
        assert!(LjParams::new(2.0, 1.0, 1.0, 6.0).is_err());
        assert!(LjParams::new(2.0, f64::NAN, 3.0, 6.0).is_err());
        assert!(LjParams::classical().is_classical_shape());
        assert!(LjParams::new(4.0, 2.0, 3.0, 6.0)
            .unwrap()
            .is_classical_shape());
    }

    #[test]
    fn lj_jet_matches_closed_form() {
        let lj = LennardJones::new(LjParams::classical()).unwrap();
        let r = 1.3f64;
        let f = r.powi(-6) - 2.0 * r.powi(-3);
        let df = -6.0 * r.powi(-7) + 6.0 * r.powi(-4);
        let d2f = 42.0 * r.powi(-8) - 24.0 * r.powi(-5);
        let jet = lj.jet(r);
        assert!((jet[0] - f).abs() < 1e-14);
        assert!((jet[1] - df).abs() < 1e-14);
        assert!((jet[2] - d2f).abs() < 1e-13);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let pots: Vec<Box<dyn Potential>> = vec![
            Box::new(LennardJones::new(LjParams::new(1.5, 0.7, 2.5, 4.25).unwrap()).unwrap()),
            Box::new(InversePower::new(2.0, 3.5).unwrap()),
            Box::new(Exponential::new(0.8).unwrap()),
        ];
        for pot in &pots {
            for &r in &[0.7, 1.0, 2.3] {
                let h = 1e-5 * r;
                let d1 = (pot.value(r + h) - pot.value(r - h)) / (2.0 * h);
                let d2 = (pot.first(r + h) - pot.first(r - h)) / (2.0 * h);
                assert!((d1 - pot.first(r)).abs() <= 1e-6 * (1.0 + d1.abs()));
                assert!((d2 - pot.second(r)).abs() <= 1e-6 * (1.0 + d2.abs()));
            }
        }
    }

    #[test]
    fn envelopes_hold() {
        let lj = LennardJones::new(LjParams::classical()).unwrap();
        assert!(spot_check_decay(&lj));
        assert!(spot_check_decay(&InversePower::new(1.0, 6.0).unwrap()));
        assert!(spot_check_decay(&Exponential::new(1.0).unwrap()));
        assert_eq!(lj.decay_exponents(), [3.0, 3.0, 3.0]);
        assert!(Exponential::new(1.0).unwrap().decay_exponents()[0].is_infinite());
    }

    #[test]
    fn lj_envelope_holds_above_one() {
        let lj = LennardJones::new(LjParams::new(0.3, 5.0, 1.5, 7.0).unwrap()).unwrap();
        for k in 0..3 {
            let env = lj.decay(k);
            for i in 0..200 {
                let r = 1.0 + 0.37 * i as f64;
                assert!(lj.jet(r)[k].abs() <= env.bound(r) * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn single_term_degenerate_lj() {
        let lj = LennardJones::unchecked(LjParams {
            a1: 0.0,
            a2: 1.0,
            t1: 3.0,
            t2: 6.0,
        });
        assert!((lj.value(2.0) - 2f64.powi(-6)).abs() < 1e-16);
    }
}
