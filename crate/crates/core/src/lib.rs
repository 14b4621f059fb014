//! Layer lengths of pre-radicals and Igusa-Todorov bounds for bound quiver
//! algebras over prime fields.

pub mod algebra;
pub mod bounds;
pub mod decompose;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod functor;
pub mod linalg;
pub mod psi;
pub mod rep;
pub mod verify;

pub use error::{Error, Result};
