use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimension: {0} (must be at least 1)")]
    InvalidDimension(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state is not normalized (squared norm {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("amplitude {index} is not finite")]
    NonFinite { index: usize },

    #[error("pixel {index}: transparency magnitude {magnitude} exceeds 1")]
    TransparencyOutOfRange { index: usize, magnitude: f64 },

    #[error("pixel index {index} out of range for {n} pixels")]
    PixelOutOfRange { index: usize, n: usize },

    #[error("reference state is degenerate: all transparencies vanish on the active pixels")]
    DegenerateReference,

    #[error("zero vector cannot be normalized")]
    ZeroVector,

    #[error("conditional probability undefined: conditioning event has probability zero")]
    UndefinedConditional,

    #[error("array is opaque: no photon can be transmitted")]
    Opaque,

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { name, reason: reason.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
