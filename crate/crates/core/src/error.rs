use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid subsystem selection: {0}")]
    InvalidSubsystems(String),

    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("unknown register or subsystem name `{0}`")]
    UnknownName(String),

    #[error("register sets overlap on `{0}`")]
    OverlappingSets(String),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("channel schema error: {0}")]
    Schema(String),

    #[error("channel output for input ({tuple}) is invalid: {reason}")]
    InvalidOutput { tuple: String, reason: String },

    #[error("invalid POVM: {0}")]
    InvalidPovm(String),

    #[error("invalid region: {0}")]
    InvalidRegion(String),

    #[error("region is empty")]
    EmptyRegion,

    #[error("linear program failed: {0}")]
    Lp(String),

    #[error("information quantity {name} is negative ({value:.3e})")]
    NegativeInformation { name: String, value: f64 },

    #[error("dimension budget exceeded: {0}")]
    DimensionBudget(String),

    #[error("square-root measurement: {0}")]
    Measurement(String),

    #[error("bosonic parameters: {0}")]
    BosonicParams(String),

    #[error("numerical invariant violated: {0}")]
    Numerical(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures that indicate a numerical bug rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NegativeInformation { .. } | Error::Numerical(_) | Error::Lp(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
