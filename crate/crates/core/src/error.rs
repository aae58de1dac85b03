use thiserror::Error;

/// Errors raised by the numerical kernels and the zero database.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),
    #[error("tolerance not met: {0}")]
    ToleranceNotMet(String),
    #[error("consistency check failed: {0}")]
    Consistency(String),
    #[error("missed zero: {0}")]
    MissedZero(String),
    #[error("evaluation too close to a zero at t = {0}")]
    OnZero(f64),
    #[error("format error: {0}")]
    Format(String),
    #[error("ordinates not strictly increasing at line {line}: {value}")]
    Monotonicity { line: usize, value: f64 },
    #[error("energy {energy} is not above the critical value {critical}")]
    SubcriticalEnergy { energy: f64, critical: f64 },
    #[error("reflection amplitude has unit modulus")]
    UnimodularReflection,
    #[error("{0} is not a zero ordinate (|Z| = {1:e})")]
    NotAZero(f64, f64),
    #[error("zeta(z) vanishes at E = {0} but at-zero mode is off")]
    OnZeroAmbiguity(f64),
    #[error("multiple zero at E = {0}: only simple zeros are supported")]
    NoSimpleZero(f64),
    #[error("bad Dirichlet character: {0}")]
    BadCharacter(String),
    #[error("invalid argument: {0}")]
    Domain(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable tag, used by the CLI error document.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Pole(_) => "PoleError",
            Error::ToleranceNotMet(_) => "ToleranceNotMet",
            Error::Consistency(_) => "ConsistencyError",
            Error::MissedZero(_) => "MissedZeroError",
            Error::OnZero(_) => "OnZeroError",
            Error::Format(_) => "FormatError",
            Error::Monotonicity { .. } => "MonotonicityError",
            Error::SubcriticalEnergy { .. } => "SubcriticalEnergy",
            Error::UnimodularReflection => "UnimodularReflection",
            Error::NotAZero(..) => "NotAZero",
            Error::OnZeroAmbiguity(_) => "OnZeroAmbiguity",
            Error::NoSimpleZero(_) => "NoSimpleZero",
            Error::BadCharacter(_) => "BadCharacter",
            Error::Domain(_) => "DomainError",
            Error::Io(_) => "IoError",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
