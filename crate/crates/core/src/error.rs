use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operator is not Hermitian (max |A - A†| = {0:e})")]
    NotHermitian(f64),

    #[error("point (Q={q}, P={p}) lies outside the phase-space disk Q² + P² ≤ 4")]
    OutsideDisk { q: f64, p: f64 },

    #[error("all couplings vanish; the fixed-point problem is degenerate")]
    DegenerateCouplings,

    #[error("no hyperbolic fixed point at h/J = {h_over_j}, K/J = {k_over_j} ({region})")]
    NoHyperbolicPoint {
        h_over_j: f64,
        k_over_j: f64,
        region: String,
    },

    #[error("fixed point at Q = {0} is not hyperbolic")]
    NotHyperbolic(f64),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("target unreachable: {0}")]
    Unreachable(String),

    #[error("numerical invariant violated: {0}")]
    Numerical(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}
