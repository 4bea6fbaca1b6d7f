use thiserror::Error;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid unit: {0}")]
    InvalidUnit(String),
    #[error("backend mismatch: {0} vs {1}")]
    BackendMismatch(String, String),
    #[error("invalid prime: {0}")]
    InvalidPrime(String),
    #[error("invalid backend: {0}")]
    InvalidBackend(String),
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("unknown variable: {0}")]
    UnknownVariable(String),
    #[error("requested degree {requested} exceeds what the ambient can hold ({available})")]
    TruncationOverflow { requested: usize, available: usize },
    #[error("unsupported bundle: {0}")]
    UnsupportedBundle(String),
    #[error("derivation inconsistent: {0}")]
    DerivationInconsistent(String),
    #[error("parity mismatch: Chow coefficient {chow} vs Witt lift of rank {witt_rank}")]
    ParityMismatch { chow: String, witt_rank: String },
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("result not proportional: {0}")]
    ProportionalityFailure(String),
    #[error("the two computation routes disagree: {0}")]
    RouteMismatch(String),
    #[error("backend has no orderings")]
    NoOrderings,
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown symbol `{symbol}` at offset {offset}")]
    UnknownSymbol { offset: usize, symbol: String },
    #[error("unknown verification suite: {0}")]
    UnknownSuite(String),
    #[error("malformed JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
