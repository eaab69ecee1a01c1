use thiserror::Error;

use crate::model::{QueryClass, TieBreakPolicy};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("cell ({row},{col}) holds {value}, outside alphabet of size {sigma}")]
    CellOutOfAlphabet {
        row: usize,
        col: usize,
        value: u64,
        sigma: u64,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("candidate list is empty")]
    EmptyCandidateList,
    #[error("malformed query on line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("inverted range [{lo}, {hi}]")]
    RangeInverted { lo: usize, hi: usize },
    #[error("query violates {class:?} constraints: {reason}")]
    ClassViolation { class: QueryClass, reason: String },
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("select({bit}, {k}) out of range: only {available} occurrences")]
    SelectOutOfRange { bit: u8, k: usize, available: usize },
    #[error("value {value} does not fit base {base}")]
    ValueOutOfBase { value: u64, base: u64 },
    #[error("empty array")]
    EmptyArray,
    #[error("alphabet violation: {0}")]
    AlphabetViolation(String),
    #[error("alphabet too large: {0}")]
    AlphabetTooLarge(String),
    #[error("{structure} does not support {policy:?}")]
    UnsupportedPolicy {
        structure: &'static str,
        policy: TieBreakPolicy,
    },
    #[error("invalid staircase: {0}")]
    InvalidStaircase(String),
    #[error("enumeration guard: {0}")]
    ExplosionGuard(String),
    #[error("infeasible family parameters: {0}")]
    InfeasibleParams(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("decode error: {0}")]
    Decode(String),
}

pub type Result<T> = std::result::Result<T, Error>;
