use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("factor [{start}..{end}] is out of bounds for a word of length {len}")]
    FactorOutOfBounds {
        start: usize,
        end: usize,
        len: usize,
    },

    #[error("empty factor")]
    EmptyFactor,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown word family `{0}`")]
    UnknownFamily(String),

    #[error("generation factor must be at least 3, got {0}")]
    FactorTooSmall(u32),

    #[error("run [{start}..{end}] with period {period} is not a maximal repetition of the word")]
    InvalidRun {
        start: usize,
        end: usize,
        period: usize,
    },

    /// A combinatorial statement that is supposed to hold did not.
    #[error("verification failure ({check}): {detail}")]
    Verification { check: &'static str, detail: String },
}

impl Error {
    pub(crate) fn verification(check: &'static str, detail: impl Into<String>) -> Self {
        Error::Verification {
            check,
            detail: detail.into(),
        }
    }
}
