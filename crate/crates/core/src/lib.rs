//! Logarithmic derivation modules of reduced plane curves over the rationals.

pub mod chern;
pub mod error;
pub mod lines;
pub mod logmod;
pub mod polycore;
pub mod restriction;
pub mod triples;

pub use error::{Error, Result};
