use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet size {0} outside [2, 10]")]
    InvalidAlphabet(usize),

    #[error("symbol {symbol} not in alphabet of size {alphabet}")]
    InvalidSymbol { symbol: usize, alphabet: usize },

    #[error("alphabet mismatch: automaton has {automaton} symbols, word has {word}")]
    AlphabetMismatch { automaton: usize, word: usize },

    #[error("{0} states exceed the supported maximum of 64")]
    TooManyStates(usize),

    #[error("state {state} out of range for {num_states} states")]
    InvalidState { state: usize, num_states: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid rational {input:?}: {reason}")]
    InvalidRational { input: String, reason: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("malformed code: {0}")]
    MalformedCode(String),

    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("witness failed verification: {0}")]
    Verification(String),

    #[error("cache conflict for {key}: {first} vs {second}")]
    CacheConflict { key: String, first: String, second: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn is_budget_exhausted(&self) -> bool {
        matches!(self, Error::BudgetExhausted(_))
    }
}
