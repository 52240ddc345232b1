use thiserror::Error;

use crate::complex::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    /// Adjacency data that is not a simple graph on `0..n`.
    #[error("malformed complex: {0}")]
    Structural(String),

    #[error("not a median graph: {0}")]
    NotMedian(ValidationReport),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The argument lies outside the domain of the operation (e.g. a
    /// subcomplex that is not a member of the hyperclosure).
    #[error("outside domain: {0}")]
    Domain(String),

    #[error("resource limit exceeded: {limit} = {value}")]
    Resource { limit: &'static str, value: usize },

    #[error("invalid generator spec: {0}")]
    Spec(String),

    /// A mathematical invariant failed on input that passed validation.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
