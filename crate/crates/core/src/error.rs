use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("qubit {index} is out of range for a {num_qubits}-qubit state")]
    QubitOutOfRange { index: usize, num_qubits: usize },
    #[error("qubit {0} appears more than once in the gate")]
    DuplicateQubit(usize),
    #[error("{kind:?} takes {expected_controls} control(s) and {expected_targets} target(s)")]
    GateArity {
        kind: crate::engine::GateKind,
        expected_controls: usize,
        expected_targets: usize,
    },
    #[error("basis label {label} is out of range for {num_qubits} qubits")]
    LabelOutOfRange { label: u64, num_qubits: usize },
    #[error("{requested} qubits exceeds the configured maximum of {max}")]
    Capacity { requested: usize, max: usize },
    #[error("qubit counts differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("amplitude array length {0} is not a power of two of at least 2")]
    BadLength(usize),
    #[error("state is not normalized (norm squared {0})")]
    NotNormalized(f64),
    #[error("the zero vector cannot be normalized")]
    ZeroVector,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("measurement outcome has zero probability")]
    ZeroProbabilityOutcome,
    #[error("no entanglement signature has nonzero probability")]
    Undetectable,
    #[error("malformed outcome string {0:?}")]
    MalformedOutcome(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
