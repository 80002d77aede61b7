//! Finite model theory workbench: relational structures, first-order logic,
//! homomorphism search, graph families, minors and preservation checks.

pub mod families;
pub mod hom;
pub mod lab;
pub mod logic;
pub mod minor;
pub mod structure;

pub use hom::{Constraints, HomKind, Homomorphism, SolverError};
pub use structure::{Element, Structure, StructureError, Vocabulary};
