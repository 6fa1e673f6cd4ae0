//! Exact finite-dimensional representation theory of the Yangian of sl2.
//!
//! Everything is computed over the rationals with no floating point: modules
//! are explicit matrices for the six generators `H_0, H_1, X_0^+/-, X_1^+/-`,
//! Drinfel'd polynomials are read off highest-weight eigenvalue series, and
//! characters are formal integer combinations of rational functions that can
//! be computed by three independent routes and compared exactly.
//!
//! The crate is `no_std` (with `alloc`); IO, serialization, and the command
//! line front end live in the companion `yangian-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod character;
pub mod eigen;
pub mod error;
pub mod hw;
pub mod linalg;
pub mod repr;
pub mod scalar;
pub mod strings;

pub use error::{Error, Result};
pub use scalar::{Polynomial, Rat, RationalFunction};
