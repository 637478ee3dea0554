//! Exact computation with free wreath products of quantum permutation
//! groups.
//!
//! The crate builds Hopf *-algebra presentations (quantum permutation
//! algebras, group algebras, free wreath products, graph symmetry
//! algebras), verifies their structure maps by bounded-degree
//! noncommutative rewriting, and cross-checks the rank-two free wreath
//! product against an exact tensor-product model carrying its Haar state
//! and fusion rules.
//!
//! Everything is computed over exact rationals; there are no floats and
//! no randomness in any result.

pub mod error;
pub mod fusion;
pub mod graphs;
pub mod groups;
pub mod hopf_verify;
pub mod model2;
pub mod ncalg;
pub mod presentations;
pub mod rewrite;
pub mod wreath_iso;

pub use error::{Error, Result};
