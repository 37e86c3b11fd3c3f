//! Marked chain-order polytopes of Gelfand–Tsetlin posets, pipe-dream
//! permutations, and exact verification of the associated toric
//! degenerations of type A and type C flag varieties.

pub mod algebra;
pub mod config;
pub mod error;
pub mod json;
pub mod linalg;
pub mod pipedream;
pub mod polytope;
pub mod poset;
pub mod rep;
pub mod verify;

pub use error::{Error, Result};
