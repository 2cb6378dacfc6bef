//! Crossed products of finite-dimensional *-algebras by an order-two
//! automorphism.
//!
//! Algebras are concrete: unital *-closed spans of complex `d x d` matrices
//! stored by a Hilbert–Schmidt orthonormal basis. On top of that the crate
//! builds the doubled-matrix model of `A ⋊ Z/2`, induced representations,
//! the Type 1 / Type 2 classification of irreducible representations,
//! brute-force oracles for the supporting operator lemmas, and exact-integer
//! K-theory (Smith normal form, K₀ of finite-dimensional algebras, and the
//! pushout for amalgamated free products).
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod classify;
pub mod crossed;
pub mod error;
pub mod ktheory;
pub mod models;
pub mod numkernel;
pub mod oracles;
pub mod star_algebra;

pub use error::{Error, Result};
pub use numkernel::{CMatrix, Config, TolerancePolicy, C64};
pub use star_algebra::{StarAlgebra, StarHom};
