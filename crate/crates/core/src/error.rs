use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {0} exceeds the table limit of 65536")]
    FieldTooLarge(u64),
    #[error("element {value} is not in GF({q})")]
    ElementOutOfRange { value: u64, q: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("field mismatch: expected GF({expected}), got GF({actual})")]
    FieldMismatch { expected: u32, actual: u32 },

    #[error("invalid set family: {0}")]
    InvalidFamily(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("generation failed after {attempts} attempt(s): {reason}")]
    GenerationFailed { attempts: u32, reason: String },
    #[error("enumeration of {required} subsets exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("parity-check matrix has rank {actual}, expected {expected}")]
    RankDeficient { expected: usize, actual: usize },
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("local repair needs exactly one erasure, found {0}")]
    NotSingleErasure(usize),
    #[error("position {position} shares its repair group with another erasure")]
    GroupMateErased { position: usize },
    #[error("erasure pattern of size {erasures} is unrecoverable")]
    Unrecoverable { erasures: usize },
    #[error("received symbols admit no codeword completion")]
    Inconsistent,

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn params(msg: impl Into<String>) -> Self {
        Error::InvalidParameters(msg.into())
    }

    pub(crate) fn family(msg: impl Into<String>) -> Self {
        Error::InvalidFamily(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
