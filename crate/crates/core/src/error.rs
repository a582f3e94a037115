use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("division is not exact: remainder norm is {relative:e} of the dividend norm")]
    InexactDivision { relative: f64 },

    #[error("root finder did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence {
        iterations: usize,
        residual: f64,
        best: Vec<Complex64>,
    },

    #[error("roots requested for a polynomial of degree < 1")]
    ConstantPolynomial,

    #[error("recurrence values overflowed the guard at index {index}")]
    Overflow { index: usize },

    #[error("invalid coefficients: {0}")]
    InvalidCoefficients(String),

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("invalid family parameters: {0}")]
    InvalidParams(String),

    #[error("eigenvector requested for a value that is not a certified eigenvalue")]
    NotEigenvalue,

    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
