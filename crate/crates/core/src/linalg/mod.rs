//! Exact integer linear algebra.

pub mod lattice;
mod matrix;
pub mod normal_forms;

pub use lattice::{
    cokernel_structure, kernel_basis, pure_kernel, rational_rank, solve_integer, PureKernel,
};
pub use matrix::IntMatrix;
pub use normal_forms::{
    divisibility_chain, hermite_normal_form, row_echelon, smith_invariants, smith_normal_form, Echelon,
};
