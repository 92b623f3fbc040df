use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// The variants map onto the CLI exit codes through [`Error::exit_code`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid modulus {0}: must be at least 2")]
    InvalidModulus(u64),

    #[error("enumeration too large: {size} elements exceeds budget {budget}")]
    EnumerationTooLarge { size: String, budget: u64 },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("invalid Puiseux characteristic: {0}")]
    InvalidCharacteristic(String),

    #[error("needs more terms: {0}")]
    NeedsMoreTerms(String),

    #[error("intersection is not isolated: {0}")]
    NonIsolated(String),

    #[error("inconsistent branch: {0}")]
    InconsistentBranch(String),

    #[error("incomplete germ: {0}")]
    IncompleteGerm(String),

    #[error("invalid arity {0}: need at least 2 branches")]
    InvalidArity(usize),

    #[error("invalid exponent pair ({0}, {1}): both must be at least 2")]
    InvalidExponent(u64, u64),

    #[error("unsupported exponent pair ({0}, {1}): {2}")]
    UnsupportedExponents(u64, u64, String),

    #[error("invalid basis index {index} (lattice rank {rank})")]
    InvalidIndex { index: usize, rank: usize },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("inconsistent divide: {0}")]
    InconsistentDivide(String),

    #[error("invalid divide: {0}")]
    InvalidDivide(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) | Error::InconsistentDivide(_) | Error::InconsistentBranch(_) => 1,
            Error::EnumerationTooLarge { .. } | Error::BudgetExceeded(_) => 3,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
