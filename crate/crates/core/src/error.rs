use thiserror::Error;

/// Errors raised by the solvers and transforms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {detail}")]
    DimensionMismatch { op: &'static str, detail: String },

    #[error("ring mismatch in {op}: {left} vs {right}")]
    RingMismatch {
        op: &'static str,
        left: String,
        right: String,
    },

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("entry {value} does not belong to ring {ring}")]
    NotInRing { value: String, ring: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn dims(op: &'static str, detail: impl Into<String>) -> Self {
        Error::DimensionMismatch {
            op,
            detail: detail.into(),
        }
    }

    /// True for errors caused by a size/iteration cap rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::ResourceCap(_) | Error::Overflow(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
