//! Root data, weights and character arithmetic.

pub mod character;
pub mod root_system;

pub use character::{
    decompose, decompose_invariant, dominant_multiplicities, recompose, sym_power_character,
    sym_power_characters, weight_multiplicities, weyl_dim, Character, Constituent, DominantCache,
    ProductSystem,
};
pub use root_system::{RootSystem, RootType, Weight};
