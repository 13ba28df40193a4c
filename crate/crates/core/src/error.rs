use thiserror::Error;

/// Errors raised by the ring, map, complex and entropy computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("{0}")]
    InvalidMap(String),

    #[error("maps act on different rings")]
    RingMismatch,

    #[error("iterate count must be at least 1")]
    ZeroIterate,

    /// The quotient `R/I` is not of finite length, or a map does not have finite length.
    #[error("not of finite length: {0}")]
    NotFiniteLength(String),

    /// An upper bound was requested on a ring that is not regular.
    #[error("hypothesis not met: {0} requires a regular ring (empty quotient ideal)")]
    NotRegular(&'static str),

    #[error("characteristic mismatch: ring has characteristic {ring}, requested {requested}")]
    CharacteristicMismatch { ring: u64, requested: u64 },

    #[error("square does not commute on source variable {variable}")]
    SquareDoesNotCommute { variable: usize },

    #[error("invalid transfer square: {0}")]
    InvalidSquare(String),

    #[error("homology did not stabilize within search side {cap}")]
    SearchRegionExceeded { cap: u64 },

    #[error("exponent too large for enumeration: {0}")]
    Overflow(String),

    #[error("enumeration box of {volume} points exceeds limit {limit}")]
    EnumerationTooLarge { volume: String, limit: u64 },

    #[error("complex has no nonzero cohomology")]
    ZeroComplex,

    #[error("differentials do not compose to zero at homological degree {degree}")]
    NotAComplex { degree: usize },

    #[error("need at least {needed} rows, found {found}")]
    TooFewRows { needed: usize, found: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("missing field `{0}`")]
    MissingField(&'static str),

    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::MissingField(_) | Error::Io { .. } => 2,
            Error::NotFiniteLength(_)
            | Error::NotRegular(_)
            | Error::CharacteristicMismatch { .. }
            | Error::SquareDoesNotCommute { .. }
            | Error::InvalidSquare(_)
            | Error::ZeroIterate
            | Error::RingMismatch
            | Error::DimensionMismatch { .. }
            | Error::InvalidRing(_)
            | Error::InvalidMap(_)
            | Error::ZeroComplex => 3,
            Error::SearchRegionExceeded { .. }
            | Error::Overflow(_)
            | Error::EnumerationTooLarge { .. }
            | Error::NotAComplex { .. }
            | Error::TooFewRows { .. } => 1,
        }
    }
}
