//! Workbench for the numerical radius, operator norm and spectral radius
//! of complex matrices and 2x2 block operator matrices.
//!
//! The crate has five layers:
//! - [`linalg`]: dense complex matrices, a Jacobi Hermitian eigensolver and
//!   the spectral primitives (norms, absolute values, PSD square roots).
//! - [`numradius`]: certified numerical radius via rotation scan with a
//!   Lipschitz enclosure, a projected-ascent falsification oracle, and a
//!   general spectral radius.
//! - [`blockops`]: 2x2 block operator matrices and their radius and norm
//!   identities.
//! - [`bounds`]: the catalog of upper/lower numerical-radius bounds with
//!   their equality conditions.
//! - [`harness`] and [`lemmas`]: randomized verification of every bound,
//!   identity and scalar lemma over matrix ensembles, with deterministic
//!   seeding and reports.

pub mod blockops;
pub mod bounds;
pub mod error;
pub mod harness;
pub mod lemmas;
pub mod linalg;
pub mod numradius;
mod seed;

pub use error::{Error, Result};
pub use linalg::{
    hermitian_eig, inner, matrix_abs, op_norm, psd_sqrt, spectral_radius_psd_product, vec_norm,
    ComplexMatrix, HermitianEig, DEFAULT_TOL,
};
pub use numradius::{
    numerical_radius, numerical_radius_value, numerical_radius_vector_oracle,
    spectral_radius_general, RadiusCertificate,
};
