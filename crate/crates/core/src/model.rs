//! Lennard-Jones energies through homogeneity.
//!
//! With `Q_A = A Q_1`, every `(x, y)` derivative of the energy at area `A` is
//! `a2 A^-t2 Z_t2 - a1 A^-t1 Z_t1`, where `Z_t(x, y) = sum Q_1^-t` is taken at
//! unit area. The unit sums are cached, so evaluating the same `(x, y)` at
//! many areas costs one enumeration.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::energy::SumResult;
use crate::error::{check_tol, Result};
use crate::jet::{jet_bank, Jet, Order};
use crate::lattice::{check_area, LatticePoint};
use crate::potential::{InversePower, LjParams};
use crate::summation::Form;

const CACHE_LIMIT: usize = 400_000;

type Key = (u64, u64, Order, i32);

pub struct LjModel {
    params: LjParams,
    powers: [InversePower; 2],
    cache: Mutex<HashMap<Key, [Jet; 2]>>,
}

impl LjModel {
    pub fn new(params: LjParams) -> Result<Self> {
        params.validate()?;
        Ok(Self {
            params,
            powers: [
                InversePower::new(1.0, params.t1)?,
                InversePower::new(1.0, params.t2)?,
            ],
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn params(&self) -> LjParams {
        self.params
    }

    /// `(a1 A^-t1, a2 A^-t2)`.
    pub fn weights(&self, area: f64) -> (f64, f64) {
        let LjParams { a1, a2, t1, t2 } = self.params;
        (a1 * area.powf(-t1), a2 * area.powf(-t2))
    }

    /// Unit-area jets of `Q^-t1` and `Q^-t2`, certified to `unit_tol`
    /// rounded down to a power of two so that nearby requests share entries.
    pub fn unit_jets(&self, x: f64, y: f64, order: Order, unit_tol: f64) -> Result<[Jet; 2]> {
        check_tol(unit_tol)?;
        let level = unit_tol.log2().floor() as i32;
        let key = (x.to_bits(), y.to_bits(), order, level);
        if let Some(j) = self.cache.lock().unwrap().get(&key) {
            return Ok(*j);
        }
        let form = Form::new(x, y, 1.0)?;
        let jets = jet_bank(&self.powers, &form, order, 2f64.powi(level))?;
        let jets = [jets[0], jets[1]];
        let mut cache = self.cache.lock().unwrap();
        if cache.len() >= CACHE_LIMIT {
            cache.clear();
        }
        cache.insert(key, jets);
        Ok(jets)
    }

    /// Jet of the energy at arbitrary `(x, y)` with `y > 0`, certified to `tol`.
    pub fn jet(&self, x: f64, y: f64, area: f64, order: Order, tol: f64) -> Result<Jet> {
        check_area(area)?;
        check_tol(tol)?;
        let (w1, w2) = self.weights(area);
        let [z1, z2] = self.unit_jets(x, y, order, tol / (w1 + w2))?;
        Ok(z2.combine(w2, &z1, -w1))
    }

    pub fn energy(&self, p: &LatticePoint, tol: f64) -> Result<SumResult> {
        let j = self.jet(p.x(), p.y(), p.area(), Order::Value, tol)?;
        Ok(SumResult {
            value: j.value,
            truncation_radius: j.radius,
            tail_bound: j.tails[0],
        })
    }

    pub fn clear_cache(&self) {
        self.cache.lock().unwrap().clear();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::energy_jet;
    use crate::potential::LennardJones;

    #[test]
    fn homogeneous_jet_matches_direct_sum() {
        let params = LjParams::new(1.5, 0.8, 3.5, 5.0).unwrap();
        let model = LjModel::new(params).unwrap();
        let f = LennardJones::new(params).unwrap();
        for &area in &[0.6, 1.0, 2.7] {
            let a = model.jet(0.2, 1.3, area, Order::Hessian, 1e-9).unwrap();
            let b = energy_jet(&f, 0.2, 1.3, area, Order::Hessian, 1e-9).unwrap();
            assert!((a.value - b.value).abs() < 3e-9);
            assert!((a.gradient.dx - b.gradient.dx).abs() < 3e-9);
            assert!((a.hessian.dyy - b.hessian.dyy).abs() < 3e-9);
            assert!(a.tails.iter().all(|&t| t <= 1e-9));
        }
    }

    #[test]
    fn cache_returns_identical_values() {
        let model = LjModel::new(LjParams::classical()).unwrap();
        let a = model.jet(0.1, 1.2, 1.1, Order::Gradient, 1e-9).unwrap();
        let b = model.jet(0.1, 1.2, 1.1, Order::Gradient, 1e-9).unwrap();
        assert_eq!(a, b);
    }
}
