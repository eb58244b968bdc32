use num_complex::Complex64;
use std::fmt;

/// Crate-wide error type.
#[derive(Debug)]
pub enum Error {
    /// Vector or matrix dimensions do not match.
    DimensionMismatch { expected: usize, got: usize },
    /// Matrix construction from non-square data.
    NotSquare { rows: usize, cols: usize },
    /// Polynomial division by the zero polynomial.
    DivisionByZeroPoly,
    /// The derivative of a degree-0 polynomial is the zero polynomial;
    /// callers must not feed it into a GCD.
    ConstantDerivative,
    /// gcd(0, 0) is undefined.
    GcdOfZeroPair,
    /// Discriminant requires degree >= 2.
    DegreeTooSmall { degree: usize, required: usize },
    /// Simultaneous root iteration did not converge; carries the best iterate.
    RootsNoConvergence { best: Vec<Complex64> },
    /// Matrix dimension exceeds the oracle's size bound.
    OracleBoundExceeded { dim: usize, bound: usize },
    /// Invalid configuration value.
    InvalidConfig(String),
    /// The discriminant detector needs real minimal-polynomial coefficients.
    NonRealCoefficients { max_imag: f64 },
    /// Malformed input payload.
    Parse(String),
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::NotSquare { rows, cols } => {
                write!(f, "matrix is not square: {rows} rows, {cols} columns")
            }
            Error::DivisionByZeroPoly => write!(f, "polynomial division by zero polynomial"),
            Error::ConstantDerivative => {
                write!(f, "derivative of a constant polynomial is the zero polynomial")
            }
            Error::GcdOfZeroPair => write!(f, "gcd of two zero polynomials is undefined"),
            Error::DegreeTooSmall { degree, required } => {
                write!(f, "polynomial degree {degree} below required {required}")
            }
            Error::RootsNoConvergence { best } => {
                write!(f, "root iteration did not converge ({} roots in flight)", best.len())
            }
            Error::OracleBoundExceeded { dim, bound } => {
                write!(f, "matrix dimension {dim} exceeds oracle bound {bound}")
            }
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::NonRealCoefficients { max_imag } => write!(
                f,
                "minimal-polynomial coefficients are not real (max imaginary magnitude {max_imag:.3e}); \
                 use the gcd-degree detector instead"
            ),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}
