//! Document format, command-line front end, fuzz harness and SVG output
//! for the `quiver-reflect` library.

pub mod app;
pub mod document;
pub mod fuzz;
pub mod render;

pub use app::{run, Cli};
pub use document::{parse, serialize, Document, SchemaError};
pub use fuzz::{fuzz_campaign, FuzzConfig, FuzzReport};
