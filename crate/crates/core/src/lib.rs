//! Quantized compactified trigonometric Ruijsenaars-Schneider systems on a
//! finite lattice.
//!
//! The crate builds the commuting difference-operator Hamiltonians of the
//! type (i) compactified trigonometric RS `n`-particle system on the uniform
//! lattice over the classical configuration simplex, and diagonalizes them
//! explicitly through discretized `A_{n-1}` Macdonald polynomials with
//! unitary parameters.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod classical;
pub mod coeffs;
pub mod eigen;
pub mod error;
pub mod macdonald;
pub mod model;
pub mod operators;
pub mod rootsys;

pub use error::Error;
pub use model::ModelParams;
