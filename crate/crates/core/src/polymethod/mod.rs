//! Hasse derivatives, multiplicities and the grid lower bounds.
//!
//! Multiplicities are read off the Taylor shift `f(X + u)`, whose coefficient
//! at `X^j` is `(∂^j f)(u)`. Directions are projective, so they are evaluated
//! at a fixed representative; this is sound because every Hasse derivative of
//! a homogeneous polynomial is homogeneous, hence vanishes on a whole
//! projective point or nowhere on it.

mod bounds;
mod certify;
mod poly;
mod vanishing;

use thiserror::Error;

pub use bounds::{bound_best, bound_grid, bound_value, BoundReport, DEFAULT_R_MAX};
pub use certify::{certify_theorem6, Attestation, Certificate, Verdict};
pub use poly::{MultiIndex, Poly};
pub use vanishing::{
    direction_multiplicities, direction_multiplicity, vanishing_space, vanishing_system,
    VanishingSystem,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("dimension mismatch: expected {expected} variables, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("field mismatch")]
    FieldMismatch,
    #[error("the zero polynomial has no multiplicity or top part")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("empty direction set")]
    EmptyDirections,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
}
