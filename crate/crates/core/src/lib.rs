//! Exact computations with Iwahori–Hecke algebras, their induced modules,
//! Hecke symmetries and the quadratic algebras they determine.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;
mod rational;
pub mod scalars;
pub mod symcomb;
pub mod linalg;
pub mod hecke;
pub mod quadratic;
pub mod heckesym;

pub use error::{Error, Result};
pub use scalars::{field_make, Field, FieldSpec, Rational, Scalar};
