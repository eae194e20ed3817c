use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot invert a quaternion of modulus {modulus:e}")]
    ZeroDivisor { modulus: f64 },

    #[error("quaternion has no imaginary part (|im| = {im_modulus:e}); use the real-axis branch")]
    RealAxisInput { im_modulus: f64 },

    #[error("imaginary unit must have zero real part and unit modulus, got [{0}, {1}, {2}, {3}]")]
    NotUnitImaginary(f64, f64, f64, f64),

    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("operation needs a polynomial of degree at least 1")]
    ConstantPolynomial,

    #[error("root iteration did not converge after {sweeps} sweeps (max residual {max_residual:e})")]
    NumericalNonconvergence { sweeps: usize, max_residual: f64, residuals: Vec<f64> },

    #[error("alpha = {0} lies outside [-1, 1]")]
    DomainError(f64),

    #[error("point has modulus {modulus}, expected a point on the unit sphere")]
    OffSphere { modulus: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        if e.is_io() {
            Error::Io(e.to_string())
        } else {
            Error::Parse(e.to_string())
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
