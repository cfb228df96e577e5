use thiserror::Error;

/// Crate-wide error type. Every operation that can fail returns `Result<T>`.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("geometry mismatch: {0}")]
    GeometryMismatch(String),

    #[error("invalid field at t={time}: {reason}")]
    InvalidField { time: f64, reason: String },

    #[error("unsupported geometry: {0}")]
    UnsupportedGeometry(String),

    #[error("resolution too coarse: {0}")]
    ResolutionTooCoarse(String),

    #[error("bracket failure: no crosses-zero/blows-up sign change over a in [{lo}, {hi}]")]
    BracketFailure { lo: f64, hi: f64 },

    #[error("indeterminate shoot at r={r}: {reason}")]
    IndeterminateShoot { r: f64, reason: String },

    #[error("degenerate field: {0}")]
    DegenerateField(String),

    #[error("zero field: {0}")]
    ZeroField(String),

    #[error("no blow-up in series: {0}")]
    NoBlowup(String),

    #[error("missing snapshot near t={0}")]
    MissingSnapshot(f64),

    #[error("linear solve failure: {0}")]
    LinearSolve(String),

    #[error("{path}:{line}: {msg}")]
    Config {
        path: String,
        line: usize,
        msg: String,
    },

    #[error("unknown series '{name}'; available: {available}")]
    UnknownSeries { name: String, available: String },

    #[error("checkpoint format error: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
