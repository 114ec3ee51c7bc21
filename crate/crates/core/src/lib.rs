//! Exact fusion rules for Virasoro vertex operator algebras.

// Errors carry the exact parameters that caused them; they are rare and cold.
#![allow(clippy::result_large_err)]

pub mod algebra;
pub mod error;
pub mod fusion;
pub mod limit;
pub mod three_point;
pub mod verma;
pub mod zhu;

pub use error::{Error, Result};
