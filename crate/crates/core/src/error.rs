use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid interval: lo = {lo} exceeds hi = {hi}")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("invalid spread pair (t1 = {t1}, t2 = {t2}): need 0 <= t1 <= t2")]
    InvalidSpreads { t1: f64, t2: f64 },

    #[error("spread mismatch: ({0}, {1}) vs ({2}, {3})")]
    SpreadMismatch(f64, f64, f64, f64),

    #[error("degenerate spread: membership undefined for t1 = {t1}, t2 = {t2}")]
    DegenerateSpread { t1: f64, t2: f64 },

    #[error("division by fuzzy zero (divisor center is 0)")]
    DivisionByFuzzyZero,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("generator error at index {index}: {message}")]
    Generator { index: u64, message: String },

    #[error("unknown matrix class: {0}")]
    UnknownClass(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
