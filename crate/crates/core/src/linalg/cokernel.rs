//! Cokernel presentations `Z^r / a(Z^n)`.

use super::{hnf_col_with_transform, snf, Matrix};
use crate::scalar::Scalar;

/// The cokernel of `a: Z^n -> Z^r` (columns map into the row lattice) as
/// `Z^free ⊕ Z/d1 ⊕ ... ⊕ Z/dk`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cokernel<T: Scalar> {
    /// Rank of the codomain lattice.
    pub codomain_rank: usize,
    pub free_rank: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<T>,
    /// `free_rank + torsion.len()` rows of length `codomain_rank`. The first
    /// `free_rank` rows are the free coordinates and vanish on the image; the
    /// remaining rows are read modulo the matching torsion factor.
    pub projection: Matrix<T>,
    /// `codomain_rank x free_rank` integer section: `free_projection * section`
    /// is the identity and the torsion rows vanish on it.
    pub section: Matrix<T>,
}

impl<T: Scalar> Cokernel<T> {
    pub fn free_projection(&self) -> Matrix<T> {
        self.projection.select_rows(&(0..self.free_rank).collect::<Vec<_>>())
    }

    /// Image of an integer vector of the codomain in the presentation.
    pub fn project(&self, y: &[T]) -> Vec<T> {
        let mut out = self.projection.mul_vec(y);
        for (k, d) in self.torsion.iter().enumerate() {
            let v = &mut out[self.free_rank + k];
            *v = v.mod_floor(d);
        }
        out
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// Cokernel of `a`, read as the map `x ↦ a·x` from the column lattice into the
/// row lattice.
///
/// Free coordinates are canonical up to `GL_free(Z)`; they are normalized to
/// row Hermite form, so a single generator has its first nonzero entry
/// positive.
pub fn cokernel<T: Scalar>(a: &Matrix<T>) -> Cokernel<T> {
    let r = a.nrows();
    let d = snf(a);
    let factors = d.invariant_factors();
    let rank = factors.len();

    let free_idx: Vec<usize> = (rank..r).collect();
    let torsion_idx: Vec<usize> = (0..rank).filter(|&i| !factors[i].is_one()).collect();

    // Row-style HNF of the free block: transpose, column HNF, transpose back.
    let free = d.u.select_rows(&free_idx);
    let hd = hnf_col_with_transform(&free.transpose());
    let g = hd.transform.transpose();
    let free = &g * &free;

    // Rebuild a unimodular change of coordinates with the normalized free rows
    // so that the section stays well defined.
    let mut u = d.u.clone();
    for (k, &i) in free_idx.iter().enumerate() {
        for j in 0..r {
            u[(i, j)] = free[(k, j)].clone();
        }
    }
    let mut torsion_rows = d.u.select_rows(&torsion_idx);
    for (k, &i) in torsion_idx.iter().enumerate() {
        for j in 0..r {
            torsion_rows[(k, j)] = torsion_rows[(k, j)].mod_floor(&factors[i]);
        }
    }
    let projection = free.vstack(&torsion_rows).expect("same width");

    let u_inv = integer_inverse(&u);
    let section = if free_idx.is_empty() { Matrix::zeros(r, 0) } else { u_inv.transpose().select_rows(&free_idx).transpose() };

    Cokernel {
        codomain_rank: r,
        free_rank: free_idx.len(),
        torsion: torsion_idx.iter().map(|&i| factors[i].clone()).collect(),
        projection,
        section,
    }
}

/// Inverse of a unimodular matrix.
pub(crate) fn integer_inverse<T: Scalar>(u: &Matrix<T>) -> Matrix<T> {
    let inv = u.rational_inverse().expect("unimodular matrix is invertible");
    let n = u.nrows();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            assert!(inv[i][j].is_integer(), "matrix is not unimodular");
            m[(i, j)] = inv[i][j].to_integer();
        }
    }
    m
}
