use thiserror::Error;

/// Errors raised by the collocation library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degree p = {0} outside the supported range 2..=10")]
    Degree(usize),
    #[error("mesh size n = {0} outside the supported range 2..=4096")]
    MeshSize(usize),
    #[error("basis index {index} outside 1..={dim}")]
    BasisIndex { index: usize, dim: usize },
    #[error("point {0} outside the domain")]
    Domain(f64),
    #[error("derivative order {order} exceeds degree {degree}")]
    DerivativeOrder { order: usize, degree: usize },
    #[error("fractional order {0} outside the admissible range")]
    FractionalOrder(f64),
    #[error("fractional order {alpha} must be smaller than the degree {degree}")]
    OrderNotBelowDegree { alpha: f64, degree: usize },
    #[error("boundary correction is singular at x = a with nonzero boundary data")]
    SingularCorrection,
    #[error("angle {0} outside [0, pi]")]
    Angle(f64),
    #[error("quadrature needs at least one node (got {0})")]
    QuadratureNodes(usize),
    #[error("matrix is not symmetric (asymmetry {0:e})")]
    NotSymmetric(f64),
    #[error("QR iteration did not converge within {0} sweeps")]
    NoConvergence(usize),
    #[error("matrix of order {0} exceeds the dense solver cap")]
    TooLarge(usize),
    #[error("matrix is numerically singular (pivot ratio {0:e})")]
    Singular(f64),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
