//! Exact arithmetic toolkit for genus-2 curves whose automorphism group is
//! dihedral of order 8 or 12: invariants, Galois structures, rational models,
//! twists, Brauer obstructions and elliptic quotients.

pub mod algebra;
pub mod brauer;
pub mod cli;
pub mod error;
pub mod galois;
pub mod invariants;
pub mod models;
pub mod modular;
pub mod quotients;
pub mod settings;
pub mod tower;

pub use error::{Error, Result};
pub use invariants::Case;
