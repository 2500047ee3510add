//! Biot stress–stretch analysis for compressible Neo-Hooke solids with a
//! Ciarlet–Geymonat volumetric part, and the dead-loaded cube equilibrium
//! problem built on top of it.
//!
//! The material family is parameterized by the dimensionless stiffness ratio
//! `M = (lambda + 2*mu/3)/mu > 2/3`; all stresses and energies in this crate
//! are normalized by the shear modulus `mu`. The crate provides:
//!
//! - [`tensor`]: minimal symmetric 3×3 algebra (eigendecomposition, rotations,
//!   conjugation, definiteness tests),
//! - [`material`]: the volumetric energy family, the principal-stretch energy
//!   and the admissibility checks for a unique equitriaxial response,
//! - [`stress`]: closed-form principal Biot stresses, their Jacobian and its
//!   principal minors, plus matrix-level Biot and first Piola–Kirchhoff stress,
//! - [`criteria`]: pointwise monotonicity / energetic-stability classification
//!   and the radial invertibility-loss stretch,
//! - [`solver`]: radial and non-radial equilibrium branches of the dead-loaded
//!   cube, bifurcation thresholds, branch tracing and energy comparison,
//! - [`verify`]: the self-check suite exposed by the CLI.

pub mod criteria;
pub mod material;
pub mod rng;
pub mod solver;
pub mod stress;
pub mod tensor;
pub mod verify;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    ParameterDomain(String),
    #[error("matrix is not a rotation (orthogonality error {ortho_err:.3e}, det {det:.6})")]
    NotARotation { ortho_err: f64, det: f64 },
    #[error("matrix is not positive definite (smallest eigenvalue {smallest:.3e})")]
    NotPositiveDefinite { smallest: f64 },
    #[error("deformation gradient must have positive determinant (got {det:.6e})")]
    NonPositiveDeterminant { det: f64 },
    #[error("volumetric function returned a non-finite value at x = {x:.6e}")]
    NonFiniteEvaluation { x: f64 },
    #[error("no convergence after {iterations} iterations (last residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("numerical invariant violated: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
