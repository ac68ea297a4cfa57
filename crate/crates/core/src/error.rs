use thiserror::Error;

use crate::weyl::Order;

/// Domain errors raised by the algebra kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: {left} variable(s) against {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("laurent flag mismatch between operands")]
    LaurentMismatch,

    #[error("negative exponent requires laurent mode")]
    NegativeExponent,

    #[error("multi-index has {got} entries, expected {expected}")]
    IndexLength { expected: usize, got: usize },

    #[error("operator of order {order} exceeds the bound p = {bound}")]
    OrderBound { order: Order, bound: usize },

    #[error("zero operator is not a valid generator")]
    ZeroGenerator,

    #[error("{0}")]
    Unsupported(&'static str),

    #[error("point has dimension {got}, expected {expected}")]
    PointDimension { expected: usize, got: usize },

    #[error("index {index} lies outside the window [-{halfwidth}, {halfwidth}]")]
    OutsideWindow { index: i64, halfwidth: i64 },

    #[error("ragged operator matrix: row {row} has {got} entries, expected {expected}")]
    RaggedMatrix {
        row: usize,
        expected: usize,
        got: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
