use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("size error: {0}")]
    Size(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("matrix is not antisymmetric: |x[{i}][{j}] + x[{j}][{i}]| = {defect}")]
    NotAntisymmetric { i: usize, j: usize, defect: f64 },

    #[error("interpolation system is numerically singular")]
    SingularInterpolation,

    #[error("coefficient index {index} outside polynomial of degree {degree}")]
    CoefficientIndex { index: usize, degree: usize },

    #[error("quadrature did not converge: last estimates {previous} and {last}")]
    Accuracy { previous: f64, last: f64 },

    #[error("eigensolver did not converge (trial {trial:?})")]
    NonConvergence { trial: Option<u64> },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
