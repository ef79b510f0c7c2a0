//! Finite relational structures and homomorphisms, filter-tolerant powers,
//! and the finite constructions around Läuchli-style compactness arguments:
//! ultrafilter extraction from pp-definable gadgets, cycle colorings, and the
//! group-theoretic side conditions for choice principles.
//!
//! Everything is exact and deterministic. Data-parallel work goes through
//! [`Exec`], which falls back to sequential iteration when the `parallel`
//! feature is off.

pub mod choice;
pub mod config;
pub mod cycles;
pub mod error;
pub mod exec;
pub mod experiments;
pub mod duality;
pub mod filters;
pub mod gadgets;
pub mod hom;
pub mod iso;
pub mod library;
pub mod power;
pub mod solver;
pub mod structure;

pub use config::Budgets;
pub use error::{Error, Result};
pub use exec::Exec;
pub use filters::{FiniteFilter, Subset};
pub use hom::Homomorphism;
pub use structure::{Signature, Structure, StructureFile, Symbol, Tuple};
