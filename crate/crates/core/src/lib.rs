//! Tiling systems over infinite pictures, Turing machines on ω-words, and
//! the computable reductions that connect them.
//!
//! Every question about infinite objects is answered at a finite depth
//! through [`verdict::BoundedVerdict`], which separates sound refutations
//! from bounded evidence.

pub mod acceptance;
pub mod corpus;
pub mod encodings;
pub mod error;
pub mod fidelity;
pub mod formats;
pub mod grid;
pub mod reductions;
pub mod sweep;
pub mod turing;
pub mod verdict;

pub use error::{Error, Result};
