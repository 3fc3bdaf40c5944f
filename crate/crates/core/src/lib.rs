//! Bounded verification of representation results for floor and ceiling
//! sums of quadratic sequences, ternary quadratic forms and related
//! prime-flavoured families.

pub mod arith;
pub mod atoms;
pub mod bitarray;
pub mod claims;
pub mod cli;
pub mod coverage;
pub mod dsl;
pub mod error;
pub mod primeseq;
pub mod report;
pub mod ternary;

pub use error::{Error, Result};
