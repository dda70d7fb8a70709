//! Exact symplectic linear algebra over sheaves of rational-valued functions
//! on finite topological spaces.
//!
//! The structure sheaf `A` assigns to each open `U` the ring of functions
//! `U → ℚ`. On top of it the crate builds free modules of sections, exterior
//! forms, symplectic (Darboux) bases, the symplectic group, characteristic
//! polynomials and eigen-sections, with every result checked by exact
//! arithmetic.

pub mod cli;
pub mod exterior;
pub mod free_module;
pub mod json;
pub mod scalar;
pub mod sheaf;
pub mod site;
pub mod spectra;
pub mod symplectic;

pub use free_module::{QMatrix, SectionMatrix, SectionVector};
pub use scalar::{Polynomial, Rational};
pub use sheaf::Section;
pub use site::{FiniteSpace, OpenSet};
