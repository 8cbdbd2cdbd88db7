use thiserror::Error;

/// Errors shared across the whole workbench.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: ||M - M*|| = {deviation:.3e} exceeds {bound:.3e}")]
    NotHermitian { deviation: f64, bound: f64 },

    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("matrix is not positive semidefinite: min eigenvalue {min_eig:.3e} below {gate:.3e}")]
    NotPsd { min_eig: f64, gate: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("tolerance {tol:.3e} unreachable within the evaluation budget")]
    ToleranceUnreachable { tol: f64 },

    #[error("alpha must lie in [0, 1], got {alpha}")]
    AlphaOutOfRange { alpha: f64 },

    #[error("unknown check name: {name}")]
    UnknownCheck { name: String },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
}

pub type Result<T> = std::result::Result<T, Error>;
