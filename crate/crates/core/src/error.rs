//! Crate error type.

/// Errors produced by the geometry, map and derivative layers.
///
/// Scalar payloads are reported as `f64` so the error type stays independent
/// of the generic scalar parameter.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("direction vector must be nonzero")]
    ZeroDirection,

    #[error("point lies outside the body (distance {dist:.3e})")]
    OutsideBody { dist: f64 },

    #[error("point lies outside the convex hull (coefficient {coeff:.3e})")]
    OutsideHull { coeff: f64 },

    #[error("points are affinely dependent")]
    DependentPoints,

    #[error("generators are affinely dependent at x = {at:?}")]
    IndependenceViolation { at: Vec<f64> },

    #[error("{n} generators cannot be affinely independent in R^{l} (need n <= l+1)")]
    TooManyGenerators { n: usize, l: usize },

    #[error("argument out of domain: {0}")]
    OutOfDomain(String),

    #[error("interior point has no outer normal")]
    InteriorPoint,

    #[error("boundary point is not smooth (normal cone is not a ray)")]
    NotSmooth,

    #[error("operation requires a {expected} map")]
    WrongMapKind { expected: &'static str },

    #[error("radius must be positive, got {0:.3e}")]
    NonpositiveRadius(f64),

    #[error("no derivative witness with |v| <= k|u| found for k = {k:.3e}; smallest |v| seen {best:.3e}")]
    NoWitness { k: f64, best: f64 },

    #[error("values are not strictly convex: exposed face at p = {p:?} is not a point")]
    NotStrictlyConvex { p: Vec<f64> },

    #[error("expression error: {0}")]
    Expr(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
