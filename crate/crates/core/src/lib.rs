//! Exact computations with locally conformally symplectic (lcs) structures on
//! finite-dimensional real Lie algebras with rational structure constants.

pub mod algebra;
pub mod catalog;
pub mod constructions;
pub mod forms;
pub mod groebner;
pub mod lagrangian;
pub mod lattice;
pub mod lcs;
pub mod linalg;
pub mod notation;
pub mod par;
pub mod scalar;
pub mod upoly;
