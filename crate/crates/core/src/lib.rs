#![no_std]
#![doc = include_str!("../README.md")]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod catalog;
pub mod error;
pub mod eval;
pub mod lattice;
pub mod params;
pub mod sampler;
pub mod verifier;
pub mod weyl;

pub use arith::{residual, BigComplex, Nome, Real, ThetaTruncation};
pub use error::{Error, Result};
