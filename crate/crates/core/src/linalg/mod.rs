//! Exact linear algebra over prime fields and the integers.

mod fp;
mod int;

pub use fp::{inv_mod, kernel_basis, rank, solve, Echelon, FpMatrix};
pub(crate) use fp::axpy;
pub use int::{
    abelian_invariants_of_cokernel, local_cokernel, local_left_kernel, smith_diagonal, smith_normal_form, sparse_apply, sparse_cokernel,
    sparse_left_kernel,
    Cokernel, IntMatrix, Smith, SparseRow,
};
