//! Finitely presented representations: cell partitions, interval modules,
//! morphisms and hom spaces.

mod bar;
mod morphism;
mod partition;
pub mod random;
mod rep;
mod sparse;

pub use bar::{Bar, Endpoint};
pub use morphism::{common_refinement, hom_space, Morphism};
pub use partition::{Cell, CellPartition};
pub use random::{random_planted, random_rep, Budget};
pub use rep::{Rep, Violation};

use thiserror::Error;

use crate::quiver::Coord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("{x} does not precede {y}")]
    Incomparable { x: Coord, y: Coord },
    #[error("representations are over different fields")]
    FieldMismatch,
    #[error("representations are over different quivers")]
    QuiverMismatch,
    #[error("representations are on different partitions")]
    PartitionMismatch,
    #[error("invalid bar {0}")]
    InvalidBar(String),
    #[error("invalid representation: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("naturality square at link {link} does not commute")]
    Naturality { link: usize },
    #[error("{0}")]
    Shape(String),
}
