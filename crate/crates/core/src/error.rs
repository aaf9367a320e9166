use thiserror::Error;

/// Errors raised by the polygon-lift toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(usize, usize),

    #[error("modulus must be at least 3, got {0}")]
    ModulusTooSmall(usize),

    #[error("vertex index {index} out of range 1..={n}")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("function is not real-valued (max imaginary residual {0:.3e})")]
    NotRealValued(f64),

    #[error("frequency set is empty")]
    EmptySet,

    #[error("frequency {k} exceeds floor(N/2) = {max}")]
    FrequencyOutOfRange { k: usize, max: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate polynomial: {0}")]
    Degenerate(String),

    #[error("polynomial is not globally nonnegative (value {value:.3e} at x = {witness})")]
    NotNonnegative { witness: f64, value: f64 },

    #[error("tangent condition violated for N = {0}")]
    TangentConditionViolated(usize),

    #[error("square {index} has support outside the subspace")]
    OutsideSubspace { index: usize },

    #[error("missing variable {0} in assignment")]
    MissingVariable(String),

    #[error("matrix is indefinite (min eigenvalue {0:.3e})")]
    Indefinite(f64),

    #[error("internal invariant breached: {0}")]
    InvariantBreach(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
