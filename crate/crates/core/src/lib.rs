//! Exact toolkit for finite lattices and poset topology.

pub mod arrangement;
pub mod catalog;
pub mod congruence;
pub mod doubling;
pub mod error;
pub mod json;
pub mod lattice;
pub mod poset;
pub mod sb;
pub mod simplicial;
pub mod suite;
pub mod theorems;

pub use error::{Error, Result};
pub use lattice::Lattice;
pub use poset::FinitePoset;
pub use simplicial::SimplicialComplex;
