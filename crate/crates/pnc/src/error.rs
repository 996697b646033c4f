use thiserror::Error;

use crate::gaussint::GInt;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PncError {
    #[error("Gaussian integer overflow")]
    Overflow,
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd of (0, 0) is undefined")]
    BothZero,
    #[error("q is not a Gaussian prime: {0}")]
    NotGaussianPrime(GInt),
    #[error("q is not a rational prime: {0}")]
    NotRationalPrime(i64),
    #[error("{0} is not invertible modulo {1}")]
    NotInvertible(GInt, GInt),
    #[error("{0} is not an element of Z[i]/{1}")]
    NotAnElement(GInt, GInt),
    #[error("difference pair ({0}, {1}) is not NC-valid")]
    NcInvalid(GInt, GInt),
    #[error("characteristic difference ({0}, {1}) is trivial")]
    TrivialGenerator(GInt, GInt),
    #[error("generator ({0}, {1}) is outside the open first octant")]
    OutsideOctant(GInt, GInt),
    #[error("generators are associates")]
    AssociateGenerators,
    #[error("mapping coefficients must be nonzero residues")]
    ZeroCoefficient,
    #[error("channel gain h_B must be nonzero")]
    ZeroGain,
    #[error("degenerate sampling window")]
    DegenerateWindow,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("{1}")]
    Io(std::io::ErrorKind, String),
}

impl From<std::io::Error> for PncError {
    fn from(e: std::io::Error) -> Self {
        PncError::Io(e.kind(), e.to_string())
    }
}

impl From<csv::Error> for PncError {
    fn from(e: csv::Error) -> Self {
        match e.kind() {
            csv::ErrorKind::Io(io) => PncError::Io(io.kind(), e.to_string()),
            _ => PncError::InvalidArgument(e.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, PncError>;
