use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid preference character {found:?} at position {position}; expected L or R")]
    InvalidLabel { position: usize, found: char },

    #[error("table size must be at least 1")]
    EmptyTable,

    #[error("{what}: got {value}")]
    InvalidArgument { what: &'static str, value: String },

    /// The operation only applies to preferences containing both L and R.
    #[error("operation requires regular preferences, got {prefs}")]
    Irregular { prefs: String },

    #[error("n = {n} exceeds the {what} cap of {cap}")]
    CapExceeded {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("range [{lo}, {hi}) is malformed for n = {n}")]
    InvalidRange { n: usize, lo: u64, hi: u64 },

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    /// Two exact routes to the same quantity disagree.
    #[error("cross-check failed for {quantity} at n = {n}: {detail}")]
    Mismatch {
        n: usize,
        quantity: String,
        detail: String,
    },
}

impl Error {
    pub(crate) fn invalid(what: &'static str, value: impl ToString) -> Self {
        Error::InvalidArgument {
            what,
            value: value.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
