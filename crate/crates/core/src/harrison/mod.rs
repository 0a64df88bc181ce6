//! Cochain-level machinery: quasilinear functions on K-sets and the
//! Harrison complex of a finite monoid-like set.

mod quasilinear;
mod shuffle;

pub use quasilinear::{evaluate, restriction_matrix, QuasilinearSpace};
pub use shuffle::{harrison_cohomology, ShuffleComplex, ShuffleConvention};
