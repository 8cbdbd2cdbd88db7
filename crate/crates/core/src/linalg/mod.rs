//! Dense complex linear algebra kernel: matrix type, Hermitian
//! eigendecomposition and the spectral primitives everything else consumes.

pub mod eig;
pub mod matrix;
pub mod spectral;

pub use eig::{hermitian_eig, HermitianEig};
pub use matrix::{inner, vec_norm, ComplexMatrix};
pub use spectral::{matrix_abs, op_norm, psd_sqrt, spectral_radius_psd_product};

/// Library-wide tolerance policy: `lhs <= rhs` is accepted when
/// `lhs <= rhs + tol * (1 + max(|lhs|, |rhs|))`.
///
/// The mixed absolute/relative form guards against cancellation near
/// equality cases. The default `tol` is 1e-9.
pub fn inequality_slack(lhs: f64, rhs: f64, tol: f64) -> f64 {
    tol * (1.0 + lhs.abs().max(rhs.abs()))
}

/// Default slack tolerance for inequality checks.
pub const DEFAULT_TOL: f64 = 1e-9;

/// True when `lhs <= rhs` holds under the tolerance policy.
pub fn leq_within(lhs: f64, rhs: f64, tol: f64) -> bool {
    lhs <= rhs + inequality_slack(lhs, rhs, tol)
}
