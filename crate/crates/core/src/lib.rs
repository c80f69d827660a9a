pub mod dot;
pub mod dsl;
pub mod error;
pub mod graded;
pub mod json;
pub mod koszul;
pub mod linalg;
pub mod qdual;
pub mod quiver;
pub mod rep;
pub mod scalar;
pub mod translation;
pub mod zq;

pub use error::{Error, Result};
pub use quiver::{BoundQuiver, Path, Quiver, Relation};
pub use scalar::{Field, Scalar};
