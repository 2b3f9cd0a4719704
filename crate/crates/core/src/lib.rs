//! Feasibility engine for strongly regular graphs and their automorphisms.
//!
//! Given parameters with an integer three-eigenvalue spectrum, the engine
//! derives the eigenvalue-multiplicity constraints that any automorphism
//! must satisfy, chains them across powers of an automorphism, and uses
//! them to rule out (or fail to rule out) partial difference sets in
//! abelian groups.

#![allow(clippy::needless_range_loop)]

pub mod abelian;
pub mod benson;
pub mod casebook;
pub mod dsrg;
pub mod field;
pub mod io;
pub mod linalg;
pub mod numtheory;
pub mod spectra;
pub mod srg;
pub mod twoweight;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
