//! Stirling numbers and the character theory of symmetric groups.

mod class_function;
mod equivariant;
mod murnaghan;
mod partition;
mod stirling_numbers;

pub use class_function::{ClassFunction, Decomposition};
pub use equivariant::{chain_group_character, equivariant_euler_character, homology_character};
pub use murnaghan::{irreducible_character, CharacterTable};
pub use partition::{binomial, factorial, Partition};
pub use stirling_numbers::{
    even_column_sum, stirling_signed, stirling_unsigned, verify_identity_alt, StirlingTable,
};
