//! Reflection functors at a sink (kernels) and at a source (cokernels).
//!
//! Pointwise values come from [`reflect_dims_plus`] / [`reflect_dims_minus`].
//! Whole representations are assembled by transporting the barcode one bar
//! at a time and then checked against the pointwise values.

mod checks;
mod context;
mod minus;
mod plus;
mod profile;
mod sample;

pub use checks::{unit_iso_check, unit_naturality_check, verify_lemma_squares, LemmaReport, SquareCheck, UnitIso};
pub use context::{Convention, ReflectionContext, Side};
pub use minus::{
    in_underline_rep, reflect_dims_minus, reflect_minus, reflect_minus_unchecked, transform_interval_minus,
};
pub use plus::{
    in_overline_rep, reflect_dims_plus, reflect_morphism_plus, reflect_plus, reflect_plus_unchecked,
    transform_interval_plus, ReflectedMorphism,
};
pub use profile::{CanonicalMap, CellValue, DimProfile};
pub use sample::{sample_overline, sample_underline};

use std::fmt;

use thiserror::Error;

use crate::barcode::{Barcode, BarcodeError};
use crate::linalg::{LinalgError, Matrix};
use crate::quiver::{Coord, QuiverError};
use crate::representation::RepError;

/// Result of a membership test: the block matrix and its rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub holds: bool,
    pub matrix: Matrix,
    pub rank: usize,
    /// `dim V(S_k)` for the sink test, `dim W(S'_k)` for the source test.
    pub required: usize,
}

/// What a self-check inside the reflection found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inconsistency {
    /// The assembled representation disagrees with the pointwise value.
    Dim { at: Coord, expected: usize, found: usize },
    /// A single bar produced a pointwise value above one.
    BarValue { at: Coord, dim: usize },
    /// The input is in the source subcategory but its image is not in the target one.
    Containment { rank: usize, required: usize },
}

impl fmt::Display for Inconsistency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Inconsistency::Dim { at, expected, found } => {
                write!(f, "dimension at {at}: pointwise value {expected}, assembled {found}")
            }
            Inconsistency::BarValue { at, dim } => write!(f, "a single bar has value of dimension {dim} at {at}"),
            Inconsistency::Containment { rank, required } => {
                write!(f, "image leaves the subcategory: rank {rank}, required {required}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReflectionError {
    #[error("breakpoint {0} is not a sink")]
    NotSink(usize),
    #[error("breakpoint {0} is not a source")]
    NotSource(usize),
    #[error("inconsistent reflection: {0}")]
    Inconsistent(Inconsistency),
    #[error("input is not in the subcategory where the functors are inverse")]
    NotInSubcategory,
    #[error("round trip changed the barcode: {expected} became {found}")]
    RoundTripMismatch { expected: Barcode, found: Barcode },
    #[error("no isomorphism found between the input and its round trip")]
    NoIsomorphism,
    #[error("comparison map at {at} is not invertible")]
    UnitNotInvertible { at: Coord },
    #[error("unit is not natural at {at}")]
    UnitNaturality { at: Coord },
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Barcode(#[from] BarcodeError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
