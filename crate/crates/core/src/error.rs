use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Domain and validation failures.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Probability level outside the open interval (0, 1).
    Probability(f64),
    /// Non-positive or non-finite scale/shape parameter.
    Parameter { name: &'static str, value: f64 },
    /// A sample needs at least one observation.
    EmptySample,
    /// Observation that is NaN or infinite.
    NonFinite { index: usize },
    /// `(z, h)` outside the admissible set: `h ≥ 0`, and `|z| < 1` when `h = 0`.
    Smoothing { z: f64, h: f64 },
    /// Invalid Monte Carlo configuration.
    Config(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Probability(p) => write!(f, "probability level {p} is outside (0, 1)"),
            Error::Parameter { name, value } => {
                write!(f, "parameter {name} = {value} must be finite and positive")
            }
            Error::EmptySample => f.write_str("sample is empty"),
            Error::NonFinite { index } => write!(f, "observation {index} is not finite"),
            Error::Smoothing { z, h } => write!(
                f,
                "invalid smoothing parameters (z = {z}, h = {h}): need h >= 0, and z in (-1, 1) when h = 0"
            ),
            Error::Config(msg) => write!(f, "invalid simulation config: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
