//! Energies of two-dimensional Bravais lattices over the half modular domain,
//! their first and second derivatives, stability thresholds for
//! Lennard-Jones type potentials and the minimizer-versus-area phase diagram.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod checks;
pub mod derivatives;
pub mod energy;
pub mod error;
pub mod jet;
pub mod lattice;
pub mod minimizer;
pub mod model;
pub mod optimize;
pub mod potential;
mod summation;
pub mod thresholds;

pub use derivatives::{
    bisect_stability_root, check_latsum_identities, classify_point, grad_energy, hessian_energy,
    square_hessian_diagonal, stability_entry, triangular_hessian_entry, LatsumResiduals, Site,
    StabilityEntry, StabilityReport, Verdict,
};
pub use energy::{
    epstein_zeta, lattice_sum, lattice_sum_raw, lj_energy, theta_function, SumResult,
};
pub use error::{Error, Result};
pub use jet::{energy_jet, Gradient2, Hessian2, Jet, Order};
pub use lattice::{quadratic_form, reduce_to_domain, LatticePoint};
pub use minimizer::{
    classify_shape, degeneracy_bounds, minimize_full, minimize_rectangular, minimize_rhombic,
    phase_sweep, rankin_sign_check, verify_global_min_at_area, verify_global_min_at_unit_area,
    Certainty, DegeneracyBounds, Landscape, LjLandscape, Minimizer, PhaseKind, PhasePoint,
    PotentialLandscape, RankinReport, SearchOptions, Shape,
};
pub use model::LjModel;
pub use potential::{
    Decay, Exponential, FnPotential, InversePower, LennardJones, LjParams, Potential,
};
pub use thresholds::{
    compute_thresholds, g_and_k, s_sums, threshold_a0, threshold_a_bz, thresholds_a1_a2, AbzResult,
    Estimate, SSumTable, ThresholdSet,
};
