use thiserror::Error;

use crate::order::OrderId;
use crate::quadratic::RingId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("operation not supported for ring {0:?}")]
    UnsupportedRing(RingId),
    #[error("operation not supported for order {0:?}")]
    UnsupportedOrder(OrderId),
    #[error("zero element where a nonzero one is required")]
    ZeroElement,
    #[error("ring mismatch: {0:?} vs {1:?}")]
    RingMismatch(RingId, RingId),
    #[error("quaternion does not lie in the order {0:?}")]
    NotInOrder(OrderId),
    #[error("a*O*b is not contained in the order")]
    NotSubmodule,
    #[error("coefficient sequences have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("leading coefficient {0} is not a unit")]
    NonInvertible(i128),
    #[error("prime-power rule must give 1 at exponent 0 (got {value} at p = {prime})")]
    BadNormalization { prime: u64, value: i128 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("closed form and engine disagree for {target} at m = {index}: {closed} vs {engine}")]
    CrossCheckFailure {
        target: String,
        index: usize,
        closed: i128,
        engine: i128,
    },
    #[error("requested size {requested} exceeds configured bound {bound}")]
    BoundExceeded { requested: u64, bound: u64 },
    #[error("key does not describe a sublattice of the ambient lattice")]
    NotASublattice,
    #[error("index {0} is not a perfect square")]
    NonSquareIndex(u64),
    #[error("{0} is not a representable index")]
    NotRepresentable(u64),
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("degenerate growth model at x = {0}")]
    DegenerateModel(f64),
}
