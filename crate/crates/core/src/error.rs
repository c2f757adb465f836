use thiserror::Error;

/// Errors raised by state construction, linear algebra, optimization and I/O.
#[derive(Debug, Error)]
pub enum CoherenceError {
    #[error("matrix is not Hermitian (max |M - M^dagger| = {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (eigenvalue {0:e})")]
    NotPSD(f64),

    #[error("trace is not 1 (got {0})")]
    InvalidTrace(f64),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid dimension {0}")]
    InvalidDimension(usize),

    #[error("invalid rank {rank} for dimension {dim}")]
    InvalidRank { rank: usize, dim: usize },

    #[error("alpha = {value} is outside the {regime} range")]
    AlphaOutOfRange { value: f64, regime: &'static str },

    #[error("support condition violated: {0}")]
    SupportViolation(String),

    #[error("invalid weights ({0}, {1}): need both > 0 summing to 1")]
    InvalidWeights(f64, f64),

    #[error("invalid probability vector: {0}")]
    InvalidProbVector(String),

    #[error("pure state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("objective returned a non-finite value at an interior point")]
    NonFiniteObjective,

    #[error("dimension {dim} exceeds the limit {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("dimension {dim} is below the minimum {min}")]
    DimensionTooSmall { dim: usize, min: usize },

    #[error("t values must be strictly positive (got {0}, {1})")]
    NonPositiveT(f64, f64),

    #[error("vector entry {0} is not strictly positive")]
    NonPositiveEntry(f64),

    #[error("measure is defined for qubits only (got dimension {0})")]
    NotQubit(usize),

    #[error("scalar function conditions violated: {0}")]
    ConditionsViolated(String),

    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid Kraus set: {0}")]
    InvalidKraus(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CoherenceError>;
