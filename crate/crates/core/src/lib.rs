#![no_std]
//! Partial coactions of finite-dimensional C*-bialgebras.
//!
//! Everything is computed numerically in matrix-unit coordinates. Elements,
//! maps and functionals are dense complex vectors and matrices; every
//! identity is checked against a [`Tolerance`](fdalg::Tolerance).

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bernoulli;
pub mod bialgebra;
pub mod coact;
pub mod corpus;
pub mod dilation;
pub mod error;
pub mod fdalg;
pub mod grouplink;
pub mod linalg;

pub use error::{Error, Result};
