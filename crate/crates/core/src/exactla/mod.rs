//! Exact linear algebra over ℤ and over a coefficient [`Field`](crate::field::Field).

mod intmat;
mod matrix;
mod subspace;

pub use intmat::{
    content, determinant, hermite_normal_form, int_rank, integer_kernel, integer_kernel_i64,
    smith_normal_form, solve_integer, to_big_vec, to_i64_vec, unimodular_inverse, IntMatrix,
};
pub use matrix::{
    cohomology_classes, mat_mul, mat_vec, modular_rank_bound, nullspace, rank, rref, solve, sparse_axpy, sparse_rank,
    Echelon, SparseRow,
};
pub use subspace::Subspace;
