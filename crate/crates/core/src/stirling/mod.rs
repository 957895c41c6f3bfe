//! The Stirling complexes `S_{n,k}`.

mod complex;
mod orientation;
mod tree;

pub use complex::{
    enumerate_generators, ComplexJson, DegreeJson, DifferentialJson, OrientedBasis, StirlingComplex,
};
pub use orientation::Convention;
pub use tree::StirlingTree;
