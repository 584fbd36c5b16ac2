//! Error type shared across the crate.

use thiserror::Error;

/// Errors surfaced by backend construction, current evaluation and the
/// Monte Carlo integrator.
#[derive(Debug, Error)]
pub enum Error {
    /// A backend's matrix commutators disagree with the structure constants.
    #[error(
        "backend commutator residual {residual:.3e} at generator pair ({i},{j}) exceeds {tolerance:.1e}"
    )]
    CommutatorMismatch {
        i: usize,
        j: usize,
        residual: f64,
        tolerance: f64,
    },

    /// The trace Gram matrix of a backend is not proportional to the identity.
    #[error("backend Gram residual {residual:.3e} exceeds {tolerance:.1e}")]
    GramMismatch { residual: f64, tolerance: f64 },

    /// A generator fails the antisymmetry requirement.
    #[error("generator {i} is not antisymmetric (residual {residual:.3e})")]
    NotAntisymmetric { i: usize, residual: f64 },

    /// The derivation equations did not produce a 14-dimensional solution space.
    #[error("derivation space has dimension {found}, expected 14")]
    DerivationSpace { found: usize },

    /// Basis alignment of the 7-dimensional backend did not converge.
    #[error("7-dim basis alignment stalled at residual {residual:.3e} (tolerance {tolerance:.1e})")]
    AlignmentFailed { residual: f64, tolerance: f64 },

    /// Root-space bookkeeping failed during 7-dim alignment.
    #[error("7-dim alignment: {0}")]
    AlignmentStructure(String),

    /// A finite-difference current column reconstructs poorly from the basis,
    /// meaning the derivative left the algebra.
    #[error("current column {column} projects outside the algebra (residual {residual:.3e})")]
    CurrentProjection { column: usize, residual: f64 },

    /// The integrand returned NaN or infinity.
    #[error("non-finite integrand value at coordinates {coords:?}")]
    NonFiniteIntegrand { coords: Box<[f64; 14]> },

    /// A caller-supplied argument is out of contract.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
