use thiserror::Error;

/// Errors produced by state construction, projection, detection and parsing.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("expected {expected} amplitudes for {qubits} qubits, got {got}")]
    LengthMismatch {
        qubits: usize,
        expected: usize,
        got: usize,
    },

    #[error("amplitude {index} is not finite")]
    NonFinite { index: usize },

    #[error("qubit {qubit} is out of range for a {qubits}-qubit state")]
    QubitOutOfRange { qubit: usize, qubits: usize },

    #[error("operation needs at least {required} qubits, state has {qubits}")]
    TooFewQubits { required: usize, qubits: usize },

    #[error("{qubits} qubits exceeds the supported maximum of {max}")]
    TooManyQubits { qubits: usize, max: usize },

    #[error("state vectors differ in size ({left} vs {right} qubits)")]
    SizeMismatch { left: usize, right: usize },

    #[error("vector lengths differ ({left} vs {right})")]
    VectorLengthMismatch { left: usize, right: usize },

    #[error("the state is the zero vector")]
    ZeroState,

    #[error("qubit {qubit} listed more than once")]
    DuplicateQubit { qubit: usize },

    #[error("invalid bipartition: {0}")]
    InvalidPartition(String),

    #[error("unknown catalog state `{0}`")]
    UnknownState(String),

    #[error("catalog state {name} is not defined for {qubits} qubits")]
    InconsistentQubits { name: String, qubits: usize },

    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("expected a {expected}x{expected} matrix, got {got}x{got}")]
    WrongDimension { expected: usize, got: usize },

    #[error("tolerance must be finite and non-negative, got {0}")]
    InvalidTolerance(f64),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid JSON state: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
