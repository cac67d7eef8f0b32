use thiserror::Error;

#[derive(Debug, Error)]
pub enum CascadeError {
    #[error("ring error: {0}")]
    Ring(String),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("degree error: {0}")]
    Degree(String),
    #[error("substitution error: {0}")]
    Substitute(String),
    #[error("linear algebra error: {0}")]
    Linalg(String),
    #[error("matrix structure error: {0}")]
    Structure(String),
    #[error("groebner computation exceeded its cap: {0}")]
    Capped(String),
    #[error("{0}")]
    Invalid(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
