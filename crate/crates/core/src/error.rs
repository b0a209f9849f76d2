use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vectors must have dimension at least 1")]
    ZeroDimension,

    #[error("orthonormal family is empty")]
    EmptyFamily,

    #[error("{n} vectors cannot be orthonormal in dimension {d}")]
    TooManyVectors { n: usize, d: usize },

    #[error("family is not orthonormal: |<e_{j}, e_{k}> - delta| = {deviation:e}")]
    NotOrthonormal { j: usize, k: usize, deviation: f64 },

    #[error("invalid interval [{a}, {b}]: need a < b")]
    InvalidInterval { a: f64, b: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("t = {t} lies outside [{a}, {b}]")]
    OutOfRange { t: f64, a: f64, b: f64 },

    #[error("invalid quadrature rule: {0}")]
    InvalidRule(String),

    #[error("quadrature did not converge after {doublings} doublings (last difference {achieved:e})")]
    NoConvergence { doublings: u32, achieved: f64 },

    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: String, reason: String },

    #[error("hypothesis `{variant}` requires a scalar (d = 1) function, found d = {found}")]
    RequiresScalar { variant: &'static str, found: usize },

    #[error("function vanishes at every checked point")]
    ZeroFunction,

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("hypothesis `{0}` has no equality characterization")]
    NoEqualityCase(&'static str),

    #[error("witness requires coefficient 1, measured {coefficient}")]
    OffEqualitySurface { coefficient: f64 },

    #[error("{0}")]
    Unsupported(String),

    #[error("perturbation leaves the hypothesis class: {0}")]
    LeavesClass(String),

    #[error("empty intersection: {0}")]
    EmptyIntersection(String),

    #[error("rejection sampling exhausted {attempts} attempts")]
    RejectionCapExceeded { attempts: u64 },

    #[error("nothing to render")]
    EmptyTable,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        field: field.into(),
        reason: reason.into(),
    }
}
