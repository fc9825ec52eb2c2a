use thiserror::Error;

use crate::vector::HalfIntVector;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid root system {series}{rank}: {reason}")]
    InvalidType { series: char, rank: usize, reason: String },
    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{vector} does not lie in the {lattice}")]
    NotInLattice {
        vector: HalfIntVector,
        lattice: &'static str,
    },
    #[error("{vector} is not dominant")]
    NotDominant { vector: HalfIntVector },
    #[error("lambda = {lambda} is not below mu = {mu} in the dominance order")]
    NotBelow { lambda: HalfIntVector, mu: HalfIntVector },
    #[error("{what} index {index} out of range (valid: 1..={len})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },
    #[error("{what} = {value} is not an integer")]
    NonIntegral { what: String, value: String },
    #[error("no pair in W({what}) for the given search set")]
    EmptyPairSet { what: String },
    #[error("the zero Cartan element has no bound")]
    ZeroCartan,
    #[error("characteristic {0} is not 0 or an odd prime")]
    InvalidCharacteristic(u64),
    #[error("coefficient {value} has a denominator divisible by p = {p}")]
    DenominatorNotInvertible { value: String, p: u64 },
    #[error("fundamental weight {index} is not minuscule")]
    NotMinuscule { index: usize },
    #[error("not of mod p abelian type: {reason}")]
    NotAbelianType { reason: String },
    #[error("search set {indices:?} is not stable under the duality -w0")]
    SearchNotDualityStable { indices: Vec<usize> },
    #[error("search set is empty")]
    EmptySearch,
    #[error("curve bound search for root {root} exceeded the cap {cap}")]
    CapExceeded { root: String, cap: i64 },
    #[error("Cartan element family is empty")]
    EmptyFamily,
    #[error("factor mismatch: {0}")]
    FactorMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("oracle input exceeds its scale guard: {0}")]
    ScaleGuard(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
