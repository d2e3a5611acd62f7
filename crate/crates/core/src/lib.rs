//! Exact tools for deciding, counting and measuring generation of matrix
//! algebras over finite fields, over the integers, and through density
//! Euler products.

pub mod arith;
pub mod cli;
pub mod config;
pub mod density;
pub mod error;
pub mod ffalg;
pub mod genff;
pub mod genz;
pub mod json;
pub mod polys;
pub mod sampler;

pub use error::{Error, Result};
