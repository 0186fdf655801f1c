//! Decision toolkit for Birkhoff-James orthogonality, best coapproximation,
//! and (strongly) anti-coproximinal subspaces of finite-dimensional normed
//! spaces.
//!
//! The polyhedral path works in exact rational arithmetic end to end: norms,
//! supporting-functional sets, facet enumeration (double description), and all
//! deciders reduce to exact-rational linear programs whose optima are compared
//! to zero without tolerances. The ell_p and operator paths use f64 with the
//! documented tolerances.

pub mod coapprox;
pub mod faces;
pub mod jsonio;
pub mod linalg;
pub mod lp;
pub mod operators;
pub mod orthogonality;
pub mod polytope;
pub mod samples;
pub mod scalar;
pub mod spaces;

pub use scalar::{Coeff, Rat};

use thiserror::Error;

/// Errors shared across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("the zero vector is not a valid input here")]
    ZeroVector,
    #[error("operation requires a polyhedral space")]
    NonPolyhedral,
    #[error("dimension {dim} exceeds the facet-enumeration cap {cap}")]
    CapExceeded { dim: usize, cap: usize },
    #[error("vertex set is not centrally symmetric (missing -v for vertex {index})")]
    NotSymmetric { index: usize },
    #[error("vertex set does not span the ambient space (rank {rank} < {dim})")]
    NotFullDimensional { rank: usize, dim: usize },
    #[error("subspace basis is rank deficient")]
    DegenerateBasis,
    #[error("subspace must be proper (0 < rank < ambient dimension)")]
    ImproperSubspace,
    #[error("input must lie on the unit sphere")]
    NotUnitNorm,
    #[error("p must satisfy 1 < p < infinity, got {p}")]
    BadExponent { p: f64 },
    #[error("epsilon must lie in [0, 1)")]
    BadEpsilon,
    #[error("selection-enumeration cap {cap} exceeded ({needed} combinations)")]
    SelectionCapExceeded { cap: u64, needed: u64 },
    #[error("probe vector is not a smooth point")]
    NotSmoothProbe,
    #[error("operator is zero")]
    ZeroOperator,
    #[error("operator is not absolutely strongly exposing (top singular value not simple)")]
    NotAse,
    #[error("internal route disagreement: {0}")]
    RouteDisagreement(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
