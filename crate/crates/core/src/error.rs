use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-physical state: smallest eigenvalue {min_eigenvalue:e} is negative")]
    NonPhysicalState { min_eigenvalue: f64 },

    #[error("matrix is not Bell-diagonal: {0}")]
    NotBellDiagonal(String),

    #[error("matrix is not Hermitian (defect {0:e})")]
    NotHermitian(f64),

    #[error("trace {0} differs from 1")]
    TraceNotUnity(f64),

    #[error("minimization did not converge after {evaluations} evaluations (last step {last_step:e})")]
    NotConverged { evaluations: usize, last_step: f64 },

    #[error("product-state search found F = {found} below the interior minimum {interior}")]
    InteriorMinimumNotGlobal { found: f64, interior: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
