use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("site dimension {0} is below 2")]
    SiteDimension(usize),

    #[error("total dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("operation requires a register of qubits")]
    NotQubits,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid site selection: {0}")]
    InvalidSites(String),

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("matrix is not a valid density matrix: {0}")]
    NotDensityMatrix(String),

    #[error("eigenvalue {0:e} is negative beyond tolerance")]
    NegativeEigenvalue(f64),

    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),

    /// A size or combinatorial guard was exceeded.
    #[error("guard violated: {0}")]
    Guard(String),

    #[error("illegal move: {0}")]
    IllegalMove(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for errors caused by exceeding a size guard or dimension cap.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::Guard(_) | Error::DimensionCap { .. })
    }
}
