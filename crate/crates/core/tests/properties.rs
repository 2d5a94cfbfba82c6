use lattice_lab::*;
use proptest::prelude::*;

fn lj() -> LennardJones {
    LennardJones::new(LjParams::classical()).unwrap()
}

fn value(f: &dyn Potential, x: f64, y: f64, area: f64, tol: f64) -> f64 {
    energy_jet(f, x, y, area, Order::Value, tol).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn energy_is_modular_invariant(x in -2.0f64..2.0, y in 0.5f64..2.5, area in 0.8f64..2.0) {
        let f = lj();
        let tol = 1e-10;
        let e = value(&f, x, y, area, tol);
        let scale = 4.0 * tol + 1e-12 * e.abs();
        let r2 = x * x + y * y;
        prop_assert!((value(&f, x + 1.0, y, area, tol) - e).abs() <= scale);
        prop_assert!((value(&f, -x, y, area, tol) - e).abs() <= scale);
        prop_assert!((value(&f, -x / r2, y / r2, area, tol) - e).abs() <= scale);
        let (rx, ry) = reduce_to_domain(x, y).unwrap();
        prop_assert!((0.0..=0.5).contains(&rx) && rx * rx + ry * ry >= 1.0 - 1e-12);
        prop_assert!((value(&f, rx, ry, area, tol) - e).abs() <= scale);
    }

    #[test]
    fn inverse_power_energy_is_homogeneous(x in 0.0f64..0.5, dy in 0.0f64..1.0, area in 0.5f64..3.0) {
        let y = (1.0 - x * x).sqrt() + dy;
        let f = InversePower::new(1.0, 4.0).unwrap();
        let one = value(&f, x, y, 1.0, 1e-12);
        let at = value(&f, x, y, area, 1e-12);
        prop_assert!((at - area.powi(-4) * one).abs() <= 1e-11 * (1.0 + area.powi(-4)));
    }

    #[test]
    fn homogeneous_model_matches_direct_sum(x in 0.0f64..0.5, dy in 0.0f64..1.5, area in 0.7f64..3.0) {
        let y = (1.0 - x * x).sqrt() + dy;
        let model = LjModel::new(LjParams::classical()).unwrap();
        let a = model.jet(x, y, area, Order::Gradient, 1e-10).unwrap();
        let b = energy_jet(&lj(), x, y, area, Order::Gradient, 1e-10).unwrap();
        prop_assert!((a.value - b.value).abs() <= 3e-10);
        prop_assert!((a.gradient.dx - b.gradient.dx).abs() <= 3e-10);
        prop_assert!((a.gradient.dy - b.gradient.dy).abs() <= 3e-10);
    }

    #[test]
    fn mirror_symmetry_flips_dx(x in 0.01f64..0.49, dy in 0.0f64..1.0, area in 0.8f64..2.0) {
        let y = (1.0 - x * x).sqrt() + dy;
        let f = lj();
        let a = energy_jet(&f, x, y, area, Order::Hessian, 1e-10).unwrap();
        let b = energy_jet(&f, -x, y, area, Order::Hessian, 1e-10).unwrap();
        prop_assert!((a.gradient.dx + b.gradient.dx).abs() <= 1e-9);
        prop_assert!((a.gradient.dy - b.gradient.dy).abs() <= 1e-9);
        prop_assert!((a.hessian.dxy + b.hessian.dxy).abs() <= 1e-9);
    }

    #[test]
    fn tail_certificate_bounds_the_error(x in 0.0f64..0.5, dy in 0.0f64..2.0, area in 0.5f64..2.0, e in 4i32..9) {
        let y = (1.0 - x * x).sqrt() + dy;
        let tol = 10f64.powi(-e);
        let f = lj();
        let coarse = energy_jet(&f, x, y, area, Order::Hessian, tol).unwrap();
        let fine = energy_jet(&f, x, y, area, Order::Hessian, tol * 1e-3).unwrap();
        prop_assert!(coarse.tails.iter().all(|&t| t <= tol));
        let err = (coarse.value - fine.value).abs();
        prop_assert!(err <= coarse.tails[0] + fine.tails[0] + 1e-12 * fine.value.abs().max(1.0));
        let err = (coarse.hessian.dyy - fine.hessian.dyy).abs();
        prop_assert!(err <= coarse.tails[4] + fine.tails[4] + 1e-12 * fine.hessian.dyy.abs().max(1.0));
    }

    #[test]
    fn reduction_is_idempotent(x in -5.0f64..5.0, y in 0.05f64..5.0) {
        let (a, b) = reduce_to_domain(x, y).unwrap();
        let (c, d) = reduce_to_domain(a, b).unwrap();
        prop_assert!((a - c).abs() < 1e-12 && (b - d).abs() < 1e-12);
    }

    #[test]
    fn shape_labels_are_consistent(theta in 60.0f64..90.0) {
        let t = theta.to_radians();
        let shape = classify_shape(t.cos(), t.sin());
        match shape {
            Shape::Rhombic { theta_deg } => prop_assert!((theta_deg - theta).abs() < 1e-9),
            Shape::Triangular => prop_assert!((theta - 60.0).abs() < 1e-4),
            Shape::Square => prop_assert!((theta - 90.0).abs() < 1e-4),
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }
}
