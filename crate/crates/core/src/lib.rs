//! Subword counts in free groups and their behaviour under automorphisms.
//!
//! [`word`] holds reduced, unoriented and cyclic words; [`autom`] Nielsen
//! moves and automorphisms; [`preimage`] ideal preimages and minimal full
//! sets; [`zmodule`] the count modules with their affix maps; [`rep`] the
//! matrix tower of an automorphism.

pub mod autom;
pub mod cli;
pub mod preimage;
pub mod random;
pub mod rep;
pub mod word;
pub mod zmodule;

pub use autom::{make_automorphism, Automorphism, NielsenMove};
pub use word::{CyclicWord, Letter, ReducedWord, UWord};
