//! Exact integer matrix algebra.

mod cokernel;
mod equivalence;
mod hermite;
mod matrix;
mod smith;

pub use cokernel::{cokernel, Cokernel};
pub use equivalence::right_equivalent;
pub use hermite::{hnf_col, hnf_col_with_transform, HermiteDecomposition};
pub use matrix::Matrix;
pub(crate) use matrix::{dot, gcd_slice, row_echelon_rank};
pub use smith::{snf, Smith};
