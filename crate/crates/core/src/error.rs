use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid lattice point (x = {x}, y = {y}): {reason}")]
    InvalidPoint {
        x: f64,
        y: f64,
        reason: &'static str,
    },

    #[error("area must be positive and finite, got {0}")]
    InvalidArea(f64),

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("the quadratic form is not defined at (m, n) = (0, 0)")]
    ZeroIndex,

    #[error("summand does not decay fast enough: {0}")]
    NonDecaying(String),

    #[error("exponent {s} is outside the convergence region (needs > {min})")]
    Divergent { s: f64, min: f64 },

    #[error("could not certify tolerance {tol:e}: {reason}")]
    Convergence { tol: f64, reason: String },

    #[error("invalid Lennard-Jones parameters: {0}")]
    InvalidParams(String),

    #[error("reduction to the modular domain did not finish within {0} steps")]
    ReductionLimit(usize),

    #[error("search failed: {0}")]
    Search(String),
}

pub(crate) fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}
