use thiserror::Error;

/// Errors raised by the simulation, gate and search layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("size error: {0}")]
    Size(String),

    #[error("qubit index error: {0}")]
    Index(String),

    #[error("matrix is not unitary (deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("Kraus operators are not complete (deviation {deviation:.3e})")]
    Incomplete { deviation: f64 },

    #[error("probability {name}={value} is outside [0, 1]")]
    Probability { name: &'static str, value: f64 },

    #[error("the two addend states sum to the zero vector")]
    DegenerateSum,

    #[error("unknown gate `{0}`")]
    UnknownGate(String),

    #[error("gate {gate} expects {expected}, got {got}")]
    Arity {
        gate: &'static str,
        expected: String,
        got: String,
    },

    #[error("constraint violated: {0}")]
    Constraint(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

pub type Result<T> = std::result::Result<T, Error>;
