//! The identity and invariant battery run by `selftest`.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::derivatives::check_latsum_identities;
use crate::error::Result;
use crate::jet::{energy_jet, Order};
use crate::lattice::TRIANGULAR_Y;
use crate::potential::{Exponential, InversePower, LennardJones, LjParams, Potential};
use crate::thresholds::{certify_g_k_positive, h_identity_residual};

pub const LATSUM_EXPONENTS: [f64; 2] = [5.0, 8.0];
pub const H_EXPONENTS: [f64; 2] = [3.0, 6.0];
pub const GK_EXPONENTS: [f64; 6] = [1.5, 2.0, 3.0, 4.5, 6.0, 8.0];
pub const BATTERY_AREAS: [f64; 5] = [0.3, 0.7, 1.0, 1.5, 5.0];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: impl Into<String>, passed: bool, detail: String) -> Self {
        Self {
            name: name.into(),
            passed,
            detail,
        }
    }
}

/// Potentials used by the calculus checks.
pub fn potential_battery() -> Result<Vec<(String, Box<dyn Potential>)>> {
    Ok(vec![
        ("exp(-pi r)".into(), Box::new(Exponential::new(1.0)?)),
        ("r^-3".into(), Box::new(InversePower::new(1.0, 3.0)?)),
        ("r^-6".into(), Box::new(InversePower::new(1.0, 6.0)?)),
        (
            "classical LJ".into(),
            Box::new(LennardJones::new(LjParams::classical())?),
        ),
    ])
}

/// Residuals of the hexagonal lattice sum identities.
pub fn identity_checks(limit: f64) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    for s in LATSUM_EXPONENTS {
        let r = check_latsum_identities(s, 1e-12)?;
        out.push(CheckOutcome::new(
            format!("latsum identities s={s}"),
            r.max() <= limit,
            format!("residuals {:.2e} {:.2e} {:.2e}", r.first, r.second, r.third),
        ));
    }
    for s in H_EXPONENTS {
        let r = h_identity_residual(s, 1e-12)?;
        out.push(CheckOutcome::new(
            format!("h identity s={s}"),
            r.value <= limit,
            format!("residual {:.2e}", r.value),
        ));
    }
    for s in GK_EXPONENTS {
        let (passed, detail) = match certify_g_k_positive(s) {
            Ok(r) => (
                true,
                format!(
                    "g {:.4} +- {:.1e}, k {:.4} +- {:.1e}",
                    r.g.value, r.g.error, r.k.value, r.k.error
                ),
            ),
            Err(e) => (false, e.to_string()),
        };
        out.push(CheckOutcome::new(format!("g, k > 0 s={s}"), passed, detail));
    }
    Ok(out)
}

/// Critical-point and Hessian-diagonality checks at the square and
/// triangular points for every potential of the battery and every area.
pub fn critical_point_checks(grad_limit: f64, offdiag_limit: f64) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    for (name, f) in potential_battery()? {
        let mut worst_grad = 0.0f64;
        let mut worst_offdiag = 0.0f64;
        for area in BATTERY_AREAS {
            for (x, y) in [(0.0, 1.0), (0.5, TRIANGULAR_Y)] {
                let scale = energy_jet(&*f, x, y, area, Order::Value, 1e-6)?
                    .value
                    .abs()
                    .max(1.0);
                let j = energy_jet(&*f, x, y, area, Order::Hessian, 1e-11 * scale)?;
                worst_grad = worst_grad.max(j.gradient.norm() / scale);
                let diag = j.hessian.dxx.abs() + j.hessian.dyy.abs();
                worst_offdiag = worst_offdiag.max(j.hessian.dxy.abs() / diag);
            }
        }
        out.push(CheckOutcome::new(
            format!("gradient vanishes at special points: {name}"),
            worst_grad <= grad_limit,
            format!("max scaled |grad| {worst_grad:.2e}"),
        ));
        out.push(CheckOutcome::new(
            format!("hessian diagonal at special points: {name}"),
            worst_offdiag <= offdiag_limit,
            format!("max |dxy|/(|dxx|+|dyy|) {worst_offdiag:.2e}"),
        ));
    }
    Ok(out)
}

/// Worst mixed errors `|a - b| / (1 + |b|)` of the analytic gradient and
/// Hessian against central differences at `count` random interior points.
pub fn finite_difference_errors(
    f: &dyn Potential,
    area: f64,
    count: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    let mut rng = StdRng::seed_from_u64(seed);
    let h = 2e-4;
    let tol = 1e-10;
    let value =
        |x: f64, y: f64| -> Result<f64> { Ok(energy_jet(f, x, y, area, Order::Value, tol)?.value) };
    let grad = |x: f64, y: f64| -> Result<[f64; 2]> {
        let g = energy_jet(f, x, y, area, Order::Gradient, tol)?.gradient;
        Ok([g.dx, g.dy])
    };
    let mixed = |a: f64, b: f64| (a - b).abs() / (1.0 + b.abs());
    let (mut worst_g, mut worst_h) = (0.0f64, 0.0f64);
    for _ in 0..count {
        let x: f64 = rng.gen_range(0.02..0.48);
        let y: f64 = rng.gen_range((1.0 - x * x).sqrt() + 0.02..2.0);
        let j = energy_jet(f, x, y, area, Order::Hessian, tol)?;
        let fd_x = (value(x + h, y)? - value(x - h, y)?) / (2.0 * h);
        let fd_y = (value(x, y + h)? - value(x, y - h)?) / (2.0 * h);
        worst_g = worst_g
            .max(mixed(fd_x, j.gradient.dx))
            .max(mixed(fd_y, j.gradient.dy));
        let (gxp, gxm) = (grad(x + h, y)?, grad(x - h, y)?);
        let (gyp, gym) = (grad(x, y + h)?, grad(x, y - h)?);
        let fd_xx = (gxp[0] - gxm[0]) / (2.0 * h);
        let fd_yy = (gyp[1] - gym[1]) / (2.0 * h);
        let fd_xy = (gyp[0] - gym[0]) / (2.0 * h);
        worst_h = worst_h
            .max(mixed(fd_xx, j.hessian.dxx))
            .max(mixed(fd_yy, j.hessian.dyy))
            .max(mixed(fd_xy, j.hessian.dxy));
    }
    Ok((worst_g, worst_h))
}

pub fn finite_difference_checks(limit: f64) -> Result<Vec<CheckOutcome>> {
    let f = LennardJones::new(LjParams::classical())?;
    let (g, h) = finite_difference_errors(&f, 1.1, 20, 7)?;
    Ok(vec![
        CheckOutcome::new(
            "finite-difference gradient",
            g <= limit,
            format!("max mixed error {g:.2e}"),
        ),
        CheckOutcome::new(
            "finite-difference hessian",
            h <= limit,
            format!("max mixed error {h:.2e}"),
        ),
    ])
}

/// The whole battery with its default limits.
pub fn run_selftest() -> Result<Vec<CheckOutcome>> {
    let mut out = identity_checks(1e-10)?;
    out.extend(critical_point_checks(1e-9, 1e-10)?);
    out.extend(finite_difference_checks(1e-5)?);
    Ok(out)
}
