use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate spectral window: range {range} must be positive")]
    DegenerateWindow { range: f64 },

    #[error("empty determinant sector")]
    EmptySector,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("sector ({n_alpha}, {n_beta}) inconsistent with NELEC={nelec}, MS2={ms2}")]
    SectorMismatch {
        n_alpha: usize,
        n_beta: usize,
        nelec: usize,
        ms2: i64,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("zero vector cannot be normalized")]
    ZeroVector,

    #[error("matrix is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("shift {shift} coincides with the estimate; the factor is undefined")]
    SingularShift { shift: f64 },

    #[error("full simulation needs {qubits} qubits, above the cap of {cap}")]
    TooManyQubits { qubits: usize, cap: usize },
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
