//! Supercharacter theories of finite cyclic groups `Z_n`.
//!
//! A supercharacter theory of an abelian group is determined by its
//! superclass partition, which is the partition of a Schur ring. This crate
//! validates such partitions exactly, enumerates all of them for a given
//! `n`, builds the lattice `Sup(Z_n)` ordered by refinement, and checks
//! lattice properties such as upper and lower semimodularity.

pub mod cache;
pub mod constructions;
pub mod cyclic;
pub mod cyclotomic;
pub mod enumerate;
pub mod error;
pub mod lattice;
pub mod partition;
pub mod theory;
pub mod verify;

pub use error::{Result, SctError};
pub use partition::Partition;
pub use theory::SCTheory;
