//! Flag-based graphs, stable `n`-trees and modular graphs.

mod dot;
mod graph;
mod modular;
mod tree;

pub use dot::{graph_to_dot, DotMarks};
pub use graph::{CanonicalCode, Contraction, Graph};
pub use modular::{CanonicalForm, ModularGraph};
pub use tree::{enumerate_stable_trees, full_mask, set_partitions, stable_tree_clades, Tree};
