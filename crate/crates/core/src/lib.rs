#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod cone;
pub mod cotangent;
pub mod error;
pub mod exactla;
pub mod field;
pub mod harrison;
pub mod monoid;

pub use error::Error;
pub use field::{Field, FieldSpec, PrimeField, Rationals};
