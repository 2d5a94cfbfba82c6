//! Sums and derivatives against independent references: closed forms of
//! the square-lattice zeta and theta values, direct summation over a large
//! box, and central finite differences.

use std::f64::consts::PI;

use lattice_lab::thresholds::s1;
use lattice_lab::*;

const CATALAN: f64 = 0.915_965_594_177_219;
const ZETA3: f64 = 1.202_056_903_159_594_3;

/// Dirichlet beta by its alternating series.
fn dirichlet_beta(k: i32) -> f64 {
    (0..200_000)
        .map(|n| (-1f64).powi(n) / (2.0 * n as f64 + 1.0).powi(k))
        .sum()
}

/// `sum' f(m^2 + m n x2 + ...)` over `|m|, |n| <= n_max`, for a form given
/// directly as a closure of the indices.
fn box_sum(n_max: i64, term: impl Fn(f64, f64) -> f64) -> f64 {
    let mut total = 0.0;
    for m in -n_max..=n_max {
        for n in -n_max..=n_max {
            if m != 0 || n != 0 {
                total += term(m as f64, n as f64);
            }
        }
    }
    total
}

#[test]
fn square_zeta_matches_closed_forms() {
    let sq = LatticePoint::square(1.0).unwrap();
    // sum' |p|^-2k = 4 zeta(k) beta(k)
    let z4 = 4.0 * PI * PI / 6.0 * CATALAN;
    let z6 = 4.0 * ZETA3 * PI.powi(3) / 32.0;
    let z12 = 4.0 * PI.powi(6) / 945.0 * dirichlet_beta(6);
    for (s, want, tol) in [(4.0, z4, 1e-6), (6.0, z6, 1e-10), (12.0, z12, 1e-12)] {
        let r = epstein_zeta(&sq, s, tol).unwrap();
        assert!(
            (r.value - want).abs() <= tol + 1e-13,
            "s={s}: {} vs {want}",
            r.value
        );
        assert!(r.tail_bound <= tol);
    }
    assert!((z4 - 6.02681).abs() < 1e-5);
    assert!((z6 - 4.65891).abs() < 1e-5);
}

#[test]
fn epstein_zeta_rejects_divergent_exponent() {
    let sq = LatticePoint::square(1.0).unwrap();
    assert!(matches!(
        epstein_zeta(&sq, 2.0, 1e-8),
        Err(Error::Divergent { .. })
    ));
}

#[test]
fn square_theta_matches_jacobi_product() {
    // theta(0, 1, 1/2; alpha = 2) = theta_3(e^-pi)^2 = sqrt(pi) / Gamma(3/4)^2
    let p = LatticePoint::square(0.5).unwrap();
    let r = theta_function(&p, 2.0, 1e-13).unwrap();
    let jacobi: f64 = 1.0 + 2.0 * (1..50).map(|n| (-PI * (n * n) as f64).exp()).sum::<f64>();
    assert!((r.value - jacobi * jacobi).abs() < 1e-12);
    assert!((r.value - 1.180_340).abs() < 1e-5);
}

#[test]
fn hexagonal_sum_matches_box_sum() {
    let direct = box_sum(300, |m, n| m.powi(4) / (m * m + m * n + n * n).powi(8));
    let r = s1(8.0, 1e-13).unwrap();
    assert!((r.value - direct).abs() < 1e-11, "{} vs {direct}", r.value);
}

#[test]
fn lj_energy_matches_box_sum() {
    let params = LjParams::classical();
    for &(x, y, area) in &[(0.2, 1.1, 1.0), (0.5, 0.9, 1.3), (0.0, 1.7, 0.8)] {
        let p = LatticePoint::new(x, y, area).unwrap();
        let r = lj_energy(&params, &p, 1e-10).unwrap();
        let direct = box_sum(600, |m, n| {
            let q = area * ((m + x * n).powi(2) / y + y * n * n);
            q.powi(-6) - 2.0 * q.powi(-3)
        });
        // the box misses about pi / (A R^4) of the r^-6 tail
        assert!((r.value - direct).abs() < 1e-9, "{} vs {direct}", r.value);
    }
}

#[test]
fn generic_potential_matches_box_sum() {
    let f = FnPotential::new(
        |r: f64| (-2.0 * r).exp() * (1.0 + r),
        |r: f64| -(-2.0 * r).exp() * (1.0 + 2.0 * r),
        |r: f64| 4.0 * r * (-2.0 * r).exp(),
        [
            Decay::Exponential {
                coeff: 1.0,
                rate: 1.0,
            },
            Decay::Exponential {
                coeff: 1.5,
                rate: 1.0,
            },
            Decay::Exponential {
                coeff: 1.5,
                rate: 1.0,
            },
        ],
    );
    let (x, y, area) = (0.3, 1.2, 0.9);
    let r = lattice_sum_raw(&f, x, y, area, 1e-13).unwrap();
    let direct = box_sum(40, |m, n| {
        let q = area * ((m + x * n).powi(2) / y + y * n * n);
        (-2.0 * q).exp() * (1.0 + q)
    });
    assert!((r.value - direct).abs() < 1e-12);
}

#[test]
fn derivatives_match_finite_differences() {
    let f = LennardJones::new(LjParams::classical()).unwrap();
    let (g, h) = checks::finite_difference_errors(&f, 1.2, 6, 11).unwrap();
    assert!(g < 1e-5 && h < 1e-5, "{g} {h}");
    let e = Exponential::new(0.7).unwrap();
    let (g, h) = checks::finite_difference_errors(&e, 0.9, 6, 12).unwrap();
    assert!(g < 1e-5 && h < 1e-5, "{g} {h}");
}

#[test]
fn stability_roots_agree_with_closed_forms() {
    let params = LjParams::classical();
    let f = LennardJones::new(params).unwrap();
    let a0 = threshold_a0(&params, 1e-12).unwrap();
    let (a1, a2) = thresholds_a1_a2(&params, 1e-12).unwrap();
    let cases = [
        (StabilityEntry::Triangular, 1.1, 1.2, a0.value),
        (StabilityEntry::SquareX, 1.1, 1.2, a1.value),
        (StabilityEntry::SquareY, 1.2, 1.3, a2.value),
    ];
    for (entry, lo, hi, want) in cases {
        let root = bisect_stability_root(&f, entry, lo, hi, 1e-8, 1e-9).unwrap();
        assert!((root - want).abs() < 1e-6, "{entry:?}: {root} vs {want}");
    }
}

#[test]
fn classical_thresholds() {
    let params = LjParams::classical();
    let a0 = threshold_a0(&params, 1e-11).unwrap();
    let (a1, a2) = thresholds_a1_a2(&params, 1e-11).unwrap();
    assert!((a0.value - 1.152438).abs() < 5e-6);
    assert!((a1.value - 1.1430032).abs() < 5e-7);
    assert!((a2.value - 1.2679987).abs() < 5e-7);
    assert!(a0.error < 1e-8 && a1.error < 1e-8 && a2.error < 1e-8);
}

#[test]
fn thresholds_invariant_under_coefficient_scaling() {
    let a = compute_thresholds(&LjParams::classical(), 1e-10, false).unwrap();
    let b = compute_thresholds(&LjParams::new(4.0, 2.0, 3.0, 6.0).unwrap(), 1e-10, false).unwrap();
    assert!((a.a0.value - b.a0.value).abs() < 1e-12);
    assert!((a.a1.value - b.a1.value).abs() < 1e-12);
    assert!((a.a2.value - b.a2.value).abs() < 1e-12);
}

#[test]
fn classification_around_thresholds() {
    let f = LennardJones::new(LjParams::classical()).unwrap();
    let at = |site, area| classify_point(&f, site, area, 1e-11).unwrap().verdict;
    assert_eq!(at(Site::Triangular, 1.0), Verdict::LocalMin);
    assert_eq!(at(Site::Square, 1.0), Verdict::Saddle);
    assert_eq!(at(Site::Triangular, 1.2), Verdict::LocalMax);
    assert_eq!(at(Site::Square, 1.2), Verdict::LocalMin);
    assert_eq!(at(Site::Square, 1.3), Verdict::Saddle);
    let near = classify_point(&f, Site::Triangular, 1.1524, 1e-11).unwrap();
    let far = classify_point(&f, Site::Triangular, 1.0, 1e-11).unwrap();
    assert!(near.margin < 1e-2 * far.margin);
}

#[test]
fn identity_battery() {
    for c in checks::identity_checks(1e-10).unwrap() {
        assert!(c.passed, "{}: {}", c.name, c.detail);
    }
}

#[test]
fn critical_point_battery() {
    for c in checks::critical_point_checks(1e-9, 1e-10).unwrap() {
        assert!(c.passed, "{}: {}", c.name, c.detail);
    }
}
