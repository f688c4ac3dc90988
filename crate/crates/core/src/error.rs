use thiserror::Error;

/// Coarse classification used by front-ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or inconsistent user input.
    Input,
    /// A problem size exceeds one of the dense enumeration/storage budgets.
    Budget,
    /// An iterative numerical routine failed or produced an unusable result.
    Numerical,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph parse error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid graph: {field}: {message}")]
    InvalidGraph { field: String, message: String },

    #[error("length mismatch: expected {expected} bits, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("{what} = {requested} exceeds the budget of {limit}")]
    Budget {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error("two-qubit gate needs distinct qubits, got {0} twice")]
    RepeatedQubit(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("state is not normalized: squared norm {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    #[error("matrix is not unitary: max |U^dag U - I| = {deviation:e}")]
    NotUnitary { deviation: f64 },

    #[error(
        "eigensolver did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("no spectral gap above the ground level at s = {s}; cannot place the reference line")]
    DegenerateGap { s: f64 },

    #[error("unknown noise preset {0:?} (expected heron-r3-opt, heron-r2-med, none or custom:p1,p2,pro)")]
    UnknownPreset(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Budget { .. } => ErrorKind::Budget,
            Error::NotNormalized { .. }
            | Error::NotUnitary { .. }
            | Error::NoConvergence { .. }
            | Error::DegenerateGap { .. } => ErrorKind::Numerical,
            _ => ErrorKind::Input,
        }
    }

    pub(crate) fn invalid_graph(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::InvalidGraph {
            field: field.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
