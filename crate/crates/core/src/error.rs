use thiserror::Error;

pub type Result<T> = std::result::Result<T, WittError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WittError {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// An exact division by an integer has no unique solution in the ring.
    #[error("cannot divide {value} by {divisor} exactly")]
    Divisibility { value: String, divisor: String },

    #[error("unsupported ring {ring}: {detail}")]
    UnsupportedRing { ring: String, detail: String },

    #[error("size bound exceeded: {size} > {bound}")]
    SizeBound { size: usize, bound: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A generation step that is guaranteed integral produced a fraction.
    #[error("internal integrality failure: {0}")]
    Internal(String),
}

impl WittError {
    /// Stable machine-readable name of the error class.
    pub fn kind(&self) -> &'static str {
        match self {
            WittError::RingMismatch { .. } => "RingMismatch",
            WittError::LengthMismatch { .. } => "LengthMismatch",
            WittError::Divisibility { .. } => "DivisibilityFailure",
            WittError::UnsupportedRing { .. } => "UnsupportedRing",
            WittError::SizeBound { .. } => "SizeBound",
            WittError::InvalidArgument(_) => "InvalidArgument",
            WittError::Parse(_) => "Parse",
            WittError::Internal(_) => "Internal",
        }
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        WittError::Parse(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        WittError::InvalidArgument(msg.into())
    }
}

pub(crate) fn check_len(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(WittError::LengthMismatch { left, right })
    }
}
