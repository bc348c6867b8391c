//! Finite algebras, their congruence lattices, and diagram limits realizing
//! prescribed finite distributive lattices.

pub mod algebra;
pub mod compat;
pub mod congruence;
pub mod diagram;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod lattice;
pub mod morphism;
pub mod partition;
pub mod poset;
pub mod variety;

pub use algebra::{FiniteAlgebra, Homomorphism, Operation, Signature};
pub use congruence::{congruence_lattice, ConLattice, Irreducibility};
pub use error::{Error, Guards, Result};
pub use lattice::FiniteLattice;
pub use partition::{Congruence, Partition};
pub use poset::{FinDistLattice, Poset};
