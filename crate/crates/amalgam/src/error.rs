//! Error types shared by every ring operation.

use thiserror::Error;

/// Failure modes of ring construction and arithmetic.
///
/// Operations fail loudly instead of guessing: a ring either advertises a
/// capability (gcd, kaplansky step, a diagonalization route) or the call
/// returns `CapabilityMissing`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("operands come from different ring descriptors")]
    MixedRings,
    #[error("division by zero: nonzero element divided by zero")]
    ZeroDivisor,
    #[error("ring `{ring}` does not support `{operation}`")]
    CapabilityMissing { ring: String, operation: String },
    #[error("series precision exhausted during {context}")]
    PrecisionExhausted { context: String },
    #[error("element is not a unit")]
    NotAUnit,
    #[error("operation requires a nonzero input")]
    ZeroInput,
    #[error("element does not belong to the declared ideal")]
    NotInIdeal,
    #[error("payload shape does not match the ring kind: {0}")]
    PayloadMismatch(String),
    #[error("required declared flags are absent or violated: {0}")]
    FlagsViolated(String),
    #[error("homomorphism preimage undefined for this element")]
    PreimageUndefined,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix exceeds the supported size cap ({0})")]
    SizeCap(usize),
    #[error("matrix shapes are incompatible: {0}")]
    ShapeMismatch(String),
    #[error("ring is not boundedly enumerable")]
    NotEnumerable,
    #[error("invalid ring descriptor: {0}")]
    InvalidDescriptor(String),
}

impl RingError {
    pub fn capability(ring: impl Into<String>, operation: impl Into<String>) -> Self {
        RingError::CapabilityMissing {
            ring: ring.into(),
            operation: operation.into(),
        }
    }

    pub fn precision(context: impl Into<String>) -> Self {
        RingError::PrecisionExhausted {
            context: context.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, RingError>;
