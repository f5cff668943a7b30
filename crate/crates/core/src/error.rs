use thiserror::Error;

/// Errors raised by field construction, map handling and the analysis layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("extension degree must be at least 1")]
    ZeroDegree,

    #[error("field order {p}^{n} exceeds the table cap of {cap} cells")]
    CapExceeded { p: u32, n: u32, cap: usize },

    #[error("invalid modulus: {0}")]
    BadModulus(String),

    #[error("modulus {0} is reducible over the prime field")]
    Reducible(String),

    #[error("{what}: {t} does not divide {n}")]
    NotDivisor { what: &'static str, t: u64, n: u64 },

    #[error("inversion of zero")]
    ZeroInverse,

    #[error("element code {code} out of range for a field of order {q}")]
    ElementOutOfRange { code: u64, q: usize },

    #[error("({u1}, {u2}) is not a basis over the half-degree subfield")]
    NotBasis { u1: u32, u2: u32 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("table length {got} does not match field order {q}")]
    TableLength { got: usize, q: usize },

    #[error("{family}: hypothesis violated: {clause}")]
    Hypothesis { family: &'static str, clause: String },

    #[error("unknown family or catalog entry `{0}`")]
    UnknownFamily(String),

    #[error("Walsh analysis for n = {n} exceeds the cap n <= {cap}")]
    WalshCapExceeded { n: u32, cap: u32 },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    /// A verified statement produced a counterexample. This indicates either an
    /// implementation bug or a genuine counterexample and must never be silenced.
    #[error("conclusion failed: {0}")]
    ConclusionFailed(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
