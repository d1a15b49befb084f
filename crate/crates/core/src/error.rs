use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("verification budget exceeded: {pairs} (S, T) pairs > budget {budget}")]
    BudgetExceeded { pairs: u128, budget: u64 },

    #[error("no sample passed verification after {attempts} attempts")]
    AttemptsExhausted { attempts: u32 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("signal has no exact rational entries")]
    NonRationalSignal,

    #[error("exact sign evaluation would need about {bits} bits")]
    ExactTooLarge { bits: u64 },

    #[error("design has no constant column weight d")]
    MissingColumnWeight,

    #[error("sign* pair (-1, -1) is inconsistent for any real input")]
    InconsistentSignPair,

    #[error("signal has empty support")]
    EmptySupport,

    #[error("invalid columns: {0}")]
    InvalidColumns(String),

    #[error("epsilon {eps} outside the admissible regime (0, {cap}]")]
    EpsOutOfRegime { eps: f64, cap: f64 },

    #[error("block size mismatch: {rows} rows is not {base_rows} x {block}")]
    BlockSizeMismatch {
        rows: usize,
        base_rows: usize,
        block: usize,
    },

    #[error("estimate mode mismatch: expected {expected}")]
    ModeMismatch { expected: &'static str },

    #[error("sensing family mismatch: decoder needs {expected}, matrix is {found}")]
    WrongFamily {
        expected: &'static str,
        found: &'static str,
    },

    #[error("polynomial has no nonzero terms")]
    TrivialPolynomial,

    #[error("invalid dimensions: {0}")]
    InvalidDimensions(String),

    #[error("input vector is not unit norm (norm = {norm})")]
    NonUnitInput { norm: f64 },

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("malformed {what} at line {line}, column {column}: {message}")]
    Malformed {
        what: &'static str,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn malformed(what: &'static str, err: &serde_json::Error) -> Self {
        Error::Malformed {
            what,
            line: err.line(),
            column: err.column(),
            message: err.to_string(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
