//! Rational halfspace systems `{ ξ : c·ξ + offset ≥ 0 }`.

mod fourier_motzkin;
mod planar;

pub use fourier_motzkin::{feasibility, Certificate, Feasibility, Inequality};
pub use planar::Planar;

use num_traits::One;

use crate::linalg::{gcd_slice, Matrix};
use crate::scalar::{q_int, Scalar, Q};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfspaces<T: Scalar> {
    c: Matrix<T>,
    offset: Vec<Q<T>>,
}

/// Result of redundancy removal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facets<T: Scalar> {
    /// Input rows that are facets, in input order.
    pub irredundant: Vec<usize>,
    /// One primitive row per facet.
    pub primitive_normals: Matrix<T>,
    /// For every input row, the facet it maps to, or `None` if dropped.
    pub k_map: Vec<Option<usize>>,
}

impl<T: Scalar> Facets<T> {
    pub fn dropped(&self) -> Vec<usize> {
        (0..self.k_map.len()).filter(|&i| self.k_map[i].is_none()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.k_map.iter().enumerate().all(|(i, k)| *k == Some(i))
    }
}

impl<T: Scalar> Halfspaces<T> {
    pub fn new(c: Matrix<T>, offset: Vec<Q<T>>) -> Result<Self, Error> {
        if c.nrows() != offset.len() {
            return Err(Error::ShapeMismatch(format!("{} constraint rows but {} offsets", c.nrows(), offset.len())));
        }
        Ok(Halfspaces { c, offset })
    }

    pub fn with_integer_offset(c: Matrix<T>, offset: &[T]) -> Result<Self, Error> {
        Self::new(c, offset.iter().cloned().map(q_int).collect())
    }

    pub fn constraints(&self) -> &Matrix<T> {
        &self.c
    }

    pub fn offset(&self) -> &[Q<T>] {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.c.ncols()
    }

    pub fn len(&self) -> usize {
        self.c.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn inequality(&self, i: usize, strict: bool, negate: bool) -> Inequality<T> {
        let sign = if negate { -Q::<T>::one() } else { Q::one() };
        Inequality::new(self.c.row(i).iter().map(|v| sign.clone() * q_int(v.clone())).collect(), sign * self.offset[i].clone(), strict)
    }

    /// The system with every row strict.
    pub fn strict_inequalities(&self) -> Vec<Inequality<T>> {
        (0..self.len()).map(|i| self.inequality(i, true, false)).collect()
    }

    pub fn inequalities(&self) -> Vec<Inequality<T>> {
        (0..self.len()).map(|i| self.inequality(i, false, false)).collect()
    }

    /// A point with every constraint strictly satisfied, if one exists.
    pub fn interior_point(&self) -> Option<Vec<Q<T>>> {
        match feasibility(&self.strict_inequalities(), self.dim()) {
            Feasibility::Feasible(x) => Some(x),
            Feasibility::Infeasible(_) => None,
        }
    }

    pub fn strict_interior_nonempty(&self) -> bool {
        self.interior_point().is_some()
    }

    pub fn contains(&self, x: &[Q<T>]) -> bool {
        self.inequalities().iter().all(|r| r.holds_at(x))
    }

    /// Row `j` is redundant among `others` when no point satisfies `others`
    /// while violating row `j`.
    fn is_redundant(&self, j: usize, others: &[usize]) -> bool {
        let mut rows: Vec<Inequality<T>> = others.iter().map(|&i| self.inequality(i, false, false)).collect();
        rows.push(self.inequality(j, true, true));
        !feasibility(&rows, self.dim()).is_feasible()
    }

    /// Facet rows and the surjection onto them.
    ///
    /// Rows are tested last to first against the rows still kept, so of two
    /// identical halfspaces the earlier one survives.
    pub fn facets(&self) -> Result<Facets<T>, Error> {
        if !self.strict_interior_nonempty() {
            return Err(Error::EmptyInterior);
        }
        let mut kept: Vec<bool> = vec![true; self.len()];
        for j in (0..self.len()).rev() {
            let others: Vec<usize> = (0..self.len()).filter(|&i| i != j && kept[i]).collect();
            if self.is_redundant(j, &others) {
                kept[j] = false;
            }
        }
        let irredundant: Vec<usize> = (0..self.len()).filter(|&i| kept[i]).collect();
        let mut k_map = vec![None; self.len()];
        let mut normals = Vec::with_capacity(irredundant.len());
        for (f, &i) in irredundant.iter().enumerate() {
            k_map[i] = Some(f);
            let g = gcd_slice(self.c.row(i));
            debug_assert!(!g.is_zero());
            normals.push(self.c.row(i).iter().map(|v| v.clone() / g.clone()).collect());
        }
        Ok(Facets { irredundant, primitive_normals: Matrix::from_rows(self.dim(), normals)?, k_map })
    }

    /// Vertex and ray description for one- and two-dimensional systems.
    pub fn vertices_and_rays_2d(&self) -> Result<Planar<T>, Error> {
        planar::enumerate(self)
    }

    /// Adds the halfspace `row · ξ + offset ≥ 0`.
    pub fn with_row(&self, row: Vec<T>, offset: Q<T>) -> Result<Self, Error> {
        let extra = Matrix::from_rows(self.dim(), vec![row])?;
        let mut off = self.offset.clone();
        off.push(offset);
        Self::new(self.c.vstack(&extra)?, off)
    }
}
