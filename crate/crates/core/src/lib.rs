//! Stirling complexes `S_{n,k}`, their homology and symmetric-group
//! characters, and the genus-one commutative graph complex.

pub mod characters;
pub mod error;
pub mod graph_complex;
pub mod linalg;
pub mod perm;
pub mod stirling;
pub mod trees;

pub use error::{Error, Result};
