use thiserror::Error;

/// Errors raised by the library. Each variant maps to a CLI exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero input")]
    ZeroInput,
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements live in different fields")]
    FieldMismatch,
    #[error("unsupported characteristic {0}")]
    UnsupportedCharacteristic(u64),
    #[error("repeated root")]
    RepeatedRoot,
    #[error("vanishing denominator in {0}")]
    VanishingDenominator(&'static str),
    #[error("factorization too hard: {0}")]
    FactorizationTooHard(String),
    #[error("search bound exceeded (bound {0})")]
    SearchBoundExceeded(u64),
    #[error("obstructed: quaternion symbol {0} is nontrivial")]
    Obstructed(String),
    #[error("no Galois structure with these fields: quaternion symbol {0} is nontrivial")]
    NoStructure(String),
    #[error("excluded parameter: {0}")]
    Excluded(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("case mismatch")]
    CaseMismatch,
    #[error("pole of {0}")]
    Pole(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::Obstructed(_) | Error::NoStructure(_) => 4,
            Error::SearchBoundExceeded(_) => 5,
            _ => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            2 => "parse",
            4 => "obstructed",
            5 => "search_bound",
            _ => "domain",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
