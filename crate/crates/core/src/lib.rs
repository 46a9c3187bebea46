pub mod barcode;
pub mod classical;
pub mod linalg;
pub mod quiver;
pub mod reflection;
pub mod representation;
