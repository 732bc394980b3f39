use thiserror::Error;

use crate::gf2poly::Gf2Poly;

/// Errors raised by the algebra, search and verification layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("constant polynomial has no irreducibility verdict")]
    ConstantPolynomial,

    #[error("{what} = {value} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("{what} = {value} is below the minimum of {min}")]
    BelowMinimum {
        what: &'static str,
        value: usize,
        min: usize,
    },

    #[error("index ({i}, {j}) out of range for dimension {n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not a permutation matrix")]
    NotPermutation,

    #[error("transvection factor ({0}, {0}) has equal indices")]
    DiagonalFactor(usize),

    #[error("invalid cycle type {0:?}: parts must be positive and non-increasing")]
    InvalidCycleType(Vec<usize>),

    #[error("empty block list")]
    EmptyBlocks,

    #[error("{poly} is reducible: it has the nontrivial factor {factor}")]
    Reducible { poly: Gf2Poly, factor: Gf2Poly },

    #[error("degree {degree} does not divide dimension {n}")]
    DegreeNotDivisor { degree: usize, n: usize },

    #[error("bit vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("thread pool: {0}")]
    ThreadPool(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_cap(what: &'static str, value: usize, cap: usize) -> Result<()> {
    if value > cap {
        Err(Error::CapExceeded { what, value, cap })
    } else {
        Ok(())
    }
}

pub(crate) fn check_min(what: &'static str, value: usize, min: usize) -> Result<()> {
    if value < min {
        Err(Error::BelowMinimum { what, value, min })
    } else {
        Ok(())
    }
}
