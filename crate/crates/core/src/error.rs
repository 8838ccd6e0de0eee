use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid arguments: {0}")]
    InvalidArguments(String),

    #[error("unsupported size: n = {n} exceeds the exact bound {max}")]
    UnsupportedSize { n: u32, max: u32 },

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("budget exhausted during {0}")]
    BudgetExhausted(String),

    #[error("too many pattern copies: about {estimate}")]
    CopyExplosion { estimate: u64 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArguments(msg.into()))
}
