//! Euler-type coordinates on the compact exceptional group G2, built around
//! its structure as an SU(3) fibration over the six-sphere.
//!
//! The crate constructs the 14-dimensional algebra from its commutator table,
//! exponentiates Euler-factor products into group elements, evaluates the
//! invariant currents and the bi-invariant metric, and samples the Haar
//! measure exactly (the density factorizes over the 14 coordinates, so each
//! coordinate inverts a one-dimensional CDF). A deterministic parallel Monte
//! Carlo integrator plus character-moment and translation-invariance suites
//! sit on top.
//!
//! ```
//! use g2haar::algebra::Backend;
//! use g2haar::measure::{mc_integrate, sample_haar};
//! use g2haar::parametrization::g2_element;
//!
//! let backend = Backend::adjoint();
//! let g = g2_element(&backend, &sample_haar(7, 0).coords);
//! assert!(g.orthogonality_residual() < 1e-10);
//!
//! // the character of a nontrivial irreducible representation averages to zero
//! let est = mc_integrate(&backend, |g| g.trace(), 2000, 7).unwrap();
//! assert!(est.mean.abs() < 4.0 * est.stderr);
//! ```
//!
//! Module map:
//!
//! * [`algebra`]: structure constants, the adjoint and 7-dim octonion
//!   backends, brackets and projections.
//! * [`parametrization`]: coordinates, ranges, factor exponentials and the
//!   group element maps.
//! * [`geometry`]: Maurer-Cartan currents, conjugation identities, metrics
//!   and the round-sphere identification.
//! * [`measure`]: densities, volumes, the exact Haar sampler, Monte Carlo
//!   integration, invariance and metric-density suites.
//! * [`verify`]: the named-check verification suite behind `g2haar verify`.
//! * [`cli`]: the thin command-line layer.
//!
//! Runnable walkthroughs for each capability live in `examples/`.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod expm;
pub mod geometry;
pub mod measure;
mod octonion;
pub mod parametrization;
pub mod verify;

pub use algebra::{AlgebraElement, Backend, BackendKind, StructureConstants};
pub use error::Error;
pub use measure::{HaarSample, HaarSampler, MCEstimate};
pub use parametrization::{g2_element, EulerCoordinates, GroupElement};
