//! Exact combinatorics engine for the crystal of the level-0 modified quantum
//! affine sl₂ algebra: path realizations of B(∞) and B(−∞), two-sided level-0
//! paths, the star involution, extremal vectors, and a bounded verifier of the
//! Peter–Weyl type decomposition into B^max(λ) ⊗ B(−λ)*.

pub mod crystal;
pub mod elementary;
pub mod enumerate;
pub mod error;
pub mod extremal;
pub mod level_paths;
pub mod oracle;
pub mod path_inf;
pub mod peter_weyl;
pub mod seq_real;
pub mod star;
pub mod weights;

pub use crystal::{ComponentGraph, Crystal, ExtInt, OpFamily};
pub use error::{CrystalError, Result};
pub use level_paths::{LevelPath, ModElt};
pub use path_inf::{HalfPath, Side};
pub use seq_real::SeqElt;
pub use weights::{NodeIndex, Weight};
