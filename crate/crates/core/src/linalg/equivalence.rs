//! Deciding `b · u = a` for unimodular `u`.

use num_traits::Zero;

use super::{hnf_col_with_transform, Matrix};
use crate::scalar::{q_int, Scalar, Q};

/// Returns a unimodular `u` with `b · u = a`, or `None` if the column lattices
/// of `a` and `b` differ.
///
/// Existence is decided by comparing column Hermite forms. When `b` has full
/// column rank the witness is unique and is recovered by a rational solve;
/// otherwise it is assembled from the two Hermite transforms.
pub fn right_equivalent<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Option<Matrix<T>> {
    if a.shape() != b.shape() {
        return None;
    }
    let ha = hnf_col_with_transform(a);
    let hb = hnf_col_with_transform(b);
    if ha.h != hb.h {
        return None;
    }
    let n = a.ncols();
    let u = if ha.pivot_rows.len() == n {
        solve_full_rank(a, b, &hb.pivot_rows)?
    } else {
        // b·tb = h = a·ta, so b·(tb·ta⁻¹) = a
        &hb.transform * &ha.inverse
    };
    debug_assert!(&(b * &u) == a && u.is_unimodular());
    Some(u)
}

/// Solves `b · u = a` with `b` of full column rank, using the rows listed in
/// `basis` as an invertible square block. Validates integrality, the full
/// equation and unimodularity.
fn solve_full_rank<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>, basis: &[usize]) -> Option<Matrix<T>> {
    let n = b.ncols();
    let bb = b.select_rows(basis);
    let inv = bb.rational_inverse()?;
    let mut u = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Q::<T>::zero();
            for (k, &row) in basis.iter().enumerate() {
                acc = acc + inv[i][k].clone() * q_int(a[(row, j)].clone());
            }
            if !acc.is_integer() {
                return None;
            }
            u[(i, j)] = acc.to_integer();
        }
    }
    (&(b * &u) == a && u.is_unimodular()).then_some(u)
}
