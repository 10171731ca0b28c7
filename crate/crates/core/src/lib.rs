//! Equational commutativity certificates for rings satisfying `x^n = x`.

pub mod arith;
pub mod error;
pub mod fppoly;
pub mod freering;
pub mod numberlab;
pub mod planner;
pub mod proofkit;
pub mod reduction;
pub mod wedderlab;

pub use error::{Error, Result};

/// Arbitrary-precision integer used throughout.
pub type Int = num_bigint::BigInt;
