//! Exact linear algebra over GF(p) and Q.

mod field;
mod matrix;
mod presentation;
mod square;

pub use field::{Field, Scalar, DEFAULT_PRIME};
pub use matrix::{Echelon, Matrix};
pub use presentation::{
    cokernel_basis, cokernel_of_difference, induced_on_cokernels, induced_on_cokernels_by, induced_on_kernels,
    induced_on_kernels_by, kernel_basis, kernel_of_difference, CokernelPresentation, KernelPresentation,
};
pub use square::{is_pullback, is_pushout, SquareFailure};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{0} is not a supported prime (need a prime below 2^31)")]
    NotPrime(u64),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("expected {expected} matrix entries, found {found}")]
    EntryCount { expected: usize, found: usize },
    #[error("entry {0} does not belong to {1}")]
    ForeignEntry(String, Field),
    #[error("block map does not preserve the subspace: induced map does not exist")]
    NotInvariant,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("cannot parse {0:?} as a field element")]
    Parse(String),
}
