//! Column-style Hermite normal form: the canonical representative of a matrix
//! under right multiplication by `GL_n(Z)`.
//!
//! Convention: pivots are positive, the pivot of each pivot row sits in the
//! next free column, entries left of a pivot in its row lie in `[0, pivot)`,
//! and zero columns come last.

use super::Matrix;
use crate::scalar::Scalar;

/// `h = a * transform`, with `inverse = transform^-1`.
#[derive(Clone, Debug)]
pub struct HermiteDecomposition<T: Scalar> {
    pub h: Matrix<T>,
    pub transform: Matrix<T>,
    pub inverse: Matrix<T>,
    /// Row index of each pivot, in column order.
    pub pivot_rows: Vec<usize>,
}

pub fn hnf_col<T: Scalar>(a: &Matrix<T>) -> Matrix<T> {
    hnf_col_with_transform(a).h
}

pub fn hnf_col_with_transform<T: Scalar>(a: &Matrix<T>) -> HermiteDecomposition<T> {
    let (m, n) = a.shape();
    let mut h = a.clone();
    let mut tr = Matrix::identity(n);
    let mut inv = Matrix::identity(n);
    let mut pivot_rows = Vec::new();

    // Column op `col[dst] += f * col[src]` is right multiplication by E; the
    // inverse is updated with the matching row op `row[src] -= f * row[dst]`.
    let add_col = |h: &mut Matrix<T>, tr: &mut Matrix<T>, inv: &mut Matrix<T>, dst: usize, src: usize, f: T| {
        h.add_col_multiple(dst, src, &f);
        tr.add_col_multiple(dst, src, &f);
        inv.add_row_multiple(src, dst, &-f);
    };
    let swap_col = |h: &mut Matrix<T>, tr: &mut Matrix<T>, inv: &mut Matrix<T>, a: usize, b: usize| {
        h.swap_cols(a, b);
        tr.swap_cols(a, b);
        inv.swap_rows(a, b);
    };

    let mut k = 0;
    for i in 0..m {
        if k == n {
            break;
        }
        // Euclid across columns k.. of row i until one nonzero entry is left.
        loop {
            let mut best: Option<usize> = None;
            for j in k..n {
                if !h[(i, j)].is_zero() && best.is_none_or(|b| h[(i, j)].abs() < h[(i, b)].abs()) {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            swap_col(&mut h, &mut tr, &mut inv, k, b);
            let mut done = true;
            for j in k + 1..n {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let q = h[(i, j)].div_floor(&h[(i, k)]);
                add_col(&mut h, &mut tr, &mut inv, j, k, -q);
                if !h[(i, j)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(i, k)].is_zero() {
            continue;
        }
        if h[(i, k)].is_negative() {
            h.negate_col(k);
            tr.negate_col(k);
            inv.negate_row(k);
        }
        let p = h[(i, k)].clone();
        for j in 0..k {
            let q = h[(i, j)].div_floor(&p);
            if !q.is_zero() {
                add_col(&mut h, &mut tr, &mut inv, j, k, -q);
            }
        }
        pivot_rows.push(i);
        k += 1;
    }

    debug_assert!({
        let id: Matrix<T> = &tr * &inv;
        id == Matrix::identity(n)
    });
    HermiteDecomposition { h, transform: tr, inverse: inv, pivot_rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = Matrix<i64>;

    #[test]
    fn identity_is_fixed() {
        assert_eq!(hnf_col(&M::identity(3)), M::identity(3));
    }

    #[test]
    fn small_example_matches_brute_force() {
        // Found by scanning all unimodular u with entries in [-3, 3] for the
        // unique a*u meeting the convention.
        let a = M::from_i64_rows(&[&[2, 1], &[0, 1]]);
        assert_eq!(hnf_col(&a), M::from_i64_rows(&[&[1, 0], &[1, 2]]));
    }

    #[test]
    fn transform_is_consistent() {
        let a = M::from_i64_rows(&[&[3, 5, 7], &[2, -4, 6], &[0, 0, 0], &[1, 1, 1]]);
        let d = hnf_col_with_transform(&a);
        assert_eq!(&a * &d.transform, d.h);
        assert_eq!(&d.transform * &d.inverse, M::identity(3));
        assert!(d.transform.is_unimodular());
    }

    #[test]
    fn rank_deficient_puts_zero_columns_last() {
        let a = M::from_i64_rows(&[&[2, 4], &[1, 2]]);
        let h = hnf_col(&a);
        assert_eq!(h, M::from_i64_rows(&[&[2, 0], &[1, 0]]));
    }
}
