use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("incomplete presentation: {0}")]
    IncompletePresentation(String),
    #[error("rewrite budget exceeded after {0} steps")]
    RewriteBudget(usize),
    #[error("not in P_theta: {0}")]
    NotInP(String),
    #[error("not weight-homogeneous")]
    NotHomogeneous,
    #[error("closure budget exceeded ({0} vectors)")]
    ClosureBudget(usize),
    #[error("invariance solve failed: {0}")]
    Invariance(String),
    #[error("not an eigenvector: {0}")]
    NotEigenvector(String),
    #[error("interpolation system degenerate: {0}")]
    Degenerate(String),
    #[error("internal inconsistency in {module}: {msg}")]
    Internal { module: &'static str, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn internal(module: &'static str, msg: impl Into<String>) -> Error {
    Error::Internal { module, msg: msg.into() }
}
