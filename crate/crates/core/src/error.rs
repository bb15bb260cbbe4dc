use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{name} must be {requirement}, got {value}")]
    Domain {
        name: &'static str,
        requirement: &'static str,
        value: f64,
    },

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("parallel combination has zero total admittance")]
    Singular,

    #[error("invalid frequency grid: {0}")]
    InvalidGrid(String),

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("model validity: {0}")]
    ModelValidity(String),

    #[error("{0} diverges")]
    Divergent(&'static str),

    #[error(
        "measured capacitance {target:.6e} F is outside the attainable range [{min:.6e}, {max:.6e}] F"
    )]
    NoSolution { target: f64, min: f64, max: f64 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("ambiguous join: {0}")]
    AmbiguousJoin(String),

    #[error("non-monotone calibration data: {}", .0.join("; "))]
    NonMonotone(Vec<String>),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("missing key `{0}`")]
    MissingKey(String),

    #[error("unknown key `{0}`")]
    UnknownKey(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(name: &'static str, requirement: &'static str, value: f64) -> Self {
        Error::Domain {
            name,
            requirement,
            value,
        }
    }
}

/// Returns `value` if it is finite and strictly positive.
pub(crate) fn ensure_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::domain(name, "finite and > 0", value))
    }
}
