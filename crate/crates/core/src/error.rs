use thiserror::Error;

/// Failure modes shared by every evaluation route.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("series for {what} did not converge within {terms} terms")]
    Convergence { what: String, terms: usize },
    #[error("branch error: {0}")]
    Branch(String),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("non-integrable endpoint: {0}")]
    Integrability(String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("divergent integral: {0}")]
    Divergence(String),
    #[error("Pochhammer symbol vanishes: {0}")]
    PochhammerZero(String),
    #[error("grid is empty after filtering (GridSpec must be nonempty)")]
    EmptyGrid,
}

pub type Result<T> = std::result::Result<T, Error>;
