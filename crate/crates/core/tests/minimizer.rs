use lattice_lab::minimizer::{
    degeneracy_bounds, rankin_sign_check, triangular_is_global, y_cap, Minimizer,
};
use lattice_lab::*;

fn classical() -> LjParams {
    LjParams::classical()
}

#[test]
fn small_area_minimizer_is_triangular() {
    let p = minimize_full(&classical(), 0.5, 1e-10).unwrap();
    assert_eq!(p.shape, Shape::Triangular);
    assert_eq!(p.certainty, Certainty::GridPolished);
}

#[test]
fn unit_area_minimizer_is_global() {
    assert!(verify_global_min_at_unit_area(&classical(), 1e-10).unwrap());
}

#[test]
fn rectangular_minimizer_above_square_phase() {
    let r = minimize_rectangular(&classical(), 1.27, 1e-10).unwrap();
    assert!((r.y - 1.033).abs() < 5e-3, "{}", r.y);
    let r = minimize_rectangular(&classical(), 1.26, 1e-10).unwrap();
    assert_eq!(r.y, 1.0);
}

#[test]
fn rhombic_angle_inside_the_rhombic_phase() {
    let model = LjModel::new(classical()).unwrap();
    let m = Minimizer::new(1e-10).unwrap();
    let rh = m
        .rhombic(&LjLandscape::new(&model, 1.141).unwrap())
        .unwrap();
    assert!(rh.theta_deg > 76.0 && rh.theta_deg < 90.0);
    let full = m
        .full(&LjLandscape::new(&model, 1.141).unwrap())
        .unwrap()
        .best;
    match full.shape {
        Shape::Rhombic { theta_deg } => assert!((theta_deg - rh.theta_deg).abs() < 1e-4),
        s => panic!("unexpected {s:?}"),
    }
    assert!(
        m.rhombic(&LjLandscape::new(&model, 1.13).unwrap())
            .unwrap()
            .theta_deg
            < 60.0 + 1e-9
    );
    assert!(
        m.rhombic(&LjLandscape::new(&model, 1.2).unwrap())
            .unwrap()
            .theta_deg
            > 90.0 - 1e-9
    );
}

#[test]
fn large_area_minimizer_respects_degeneracy_bounds() {
    let mut last = 0.0;
    for area in [5.0, 10.0, 20.0] {
        let b = degeneracy_bounds(area, 1e-12).unwrap();
        assert!(b.valid);
        let (lo, hi) = b.y_range();
        let r = minimize_rectangular(&classical(), area, 1e-10).unwrap();
        assert!(!r.capped);
        assert!(
            r.y >= lo && r.y <= hi,
            "A={area}: {} not in [{lo}, {hi}]",
            r.y
        );
        assert!(r.y >= last);
        last = r.y;
    }
}

#[test]
fn upper_degeneracy_bound_grows_linearly() {
    let a = degeneracy_bounds(1e2, 1e-12).unwrap().x2.cbrt();
    let b = degeneracy_bounds(1e4, 1e-12).unwrap().x2.cbrt();
    let slope = (b / a).ln() / 100f64.ln();
    assert!((slope - 1.0).abs() < 0.01, "{slope}");
}

#[test]
fn cap_depends_on_parameter_shape() {
    assert!(y_cap(&classical(), 10.0).unwrap() < 20.0);
    let other = LjParams::new(1.0, 1.0, 2.0, 5.0).unwrap();
    assert_eq!(y_cap(&other, 10.0).unwrap(), minimizer::DEFAULT_Y_CAP);
}

#[test]
fn rankin_sign_check_distinguishes_regimes() {
    let model = LjModel::new(classical()).unwrap();
    let big = rankin_sign_check(&model, 10.0, 30, 1e-9).unwrap();
    assert!(big.nonnegative, "{big:?}");
    assert!(big.max_abs_on_axis < 1e-8);
    let small = rankin_sign_check(&model, 1.0, 30, 1e-9).unwrap();
    assert!(!small.nonnegative && small.min_dx < 0.0);
}

#[test]
fn theta_potential_prefers_triangular_lattice() {
    for area in [0.7, 1.0, 2.0] {
        let land = PotentialLandscape::new(Exponential::new(1.0).unwrap(), area).unwrap();
        assert!(triangular_is_global(&land, 1e-10).unwrap(), "A={area}");
    }
}

#[test]
fn invalid_inputs_are_rejected() {
    assert!(minimize_full(&classical(), -1.0, 1e-10).is_err());
    assert!(minimize_full(&classical(), 1.0, 0.0).is_err());
    assert!(LjParams::new(1.0, 1.0, 3.0, 2.0).is_err());
}
