use alloc::string::String;

/// Failure modes shared by every layer of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("working precision {0} bits is below the 64-bit minimum")]
    InvalidPrecision(usize),
    #[error("invalid theta truncation: {0}")]
    InvalidTruncation(&'static str),
    #[error("nome must satisfy |p| < 1")]
    NomeOutOfRange,
    #[error("theta function evaluated at zero")]
    ZeroArgument,
    #[error("non-finite value encountered")]
    NonFinite,
    #[error("truncation budget of {max_terms} terms exhausted before reaching the tail bound")]
    PrecisionExhausted { max_terms: usize },
    #[error("degenerate configuration: denominator factor below the floor ({0})")]
    DegenerateConfiguration(&'static str),
    #[error("balancing constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("constraint cannot be solved for `{0}` (would be zero)")]
    ConstraintUnsolvable(&'static str),
    #[error("sampler gave up after {0} rejected draws")]
    SamplingExhausted(usize),
    #[error("missing parameter `{0}`")]
    MissingParameter(&'static str),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("unknown cross-check `{0}`")]
    UnknownCrossCheck(String),
    #[error("shape not supported by `{id}`: {reason}")]
    UnsupportedShape { id: &'static str, reason: String },
    #[error("invalid sampler configuration: {0}")]
    InvalidConfig(&'static str),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
