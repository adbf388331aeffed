//! Matrix algebra over the Laurent polynomial ring: normal forms, kernels,
//! cokernels, solving, and the epi / split-mono factorization.

pub mod hermite;
pub mod matrix;
pub mod smith;

pub use hermite::{hermite_normal_form, row_module_eq, HermiteForm};
pub use matrix::PolyMatrix;
pub use smith::{
    cokernel_free, epi_splitmono_factor, inverse, is_epi, is_invertible, is_split_mono,
    kernel_basis, rank, smith_normal_form, solve_left, solve_right, split_mono_left_inverse,
    SmithDecomposition,
};
