//! Superpotentials as finite sums of characters.

use std::collections::HashSet;

use num_complex::Complex64;
use num_traits::{Signed, Zero};

use crate::linalg::dot;
use crate::{int, Error, IntMatrix, Integer, ToricData};

/// `coefficient · t^exponent`.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coefficient: Complex64,
    pub exponent: Vec<Integer>,
}

impl Term {
    pub fn new(coefficient: Complex64, exponent: Vec<Integer>) -> Self {
        Term { coefficient, exponent }
    }

    pub fn label(&self) -> String {
        monomial_label(&self.exponent)
    }
}

/// A regular function candidate on a rank-`rank` torus. Exponents are
/// distinct and coefficients nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct Superpotential {
    rank: usize,
    terms: Vec<Term>,
}

impl Superpotential {
    pub fn new(rank: usize, terms: Vec<Term>) -> Result<Self, Error> {
        let mut seen = HashSet::new();
        for t in &terms {
            if t.exponent.len() != rank {
                return Err(Error::InvalidPotential(format!("exponent {} has length {}, expected {rank}", t.label(), t.exponent.len())));
            }
            if t.coefficient.is_zero() {
                return Err(Error::InvalidPotential(format!("zero coefficient on {}", t.label())));
            }
            if !seen.insert(t.exponent.clone()) {
                return Err(Error::InvalidPotential(format!("repeated monomial {}", t.label())));
            }
        }
        Ok(Superpotential { rank, terms })
    }

    /// `W = 0`.
    pub fn zero(rank: usize) -> Self {
        Superpotential { rank, terms: Vec::new() }
    }

    /// One term per row of `mon`.
    pub fn from_mon(mon: &IntMatrix, coefficients: &[Complex64]) -> Result<Self, Error> {
        if coefficients.len() != mon.nrows() {
            return Err(Error::ShapeMismatch(format!("{} coefficients for {} monomials", coefficients.len(), mon.nrows())));
        }
        let terms = mon.rows().zip(coefficients).map(|(r, c)| Term::new(*c, r.to_vec())).collect();
        Self::new(mon.ncols(), terms)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficients(&self) -> Vec<Complex64> {
        self.terms.iter().map(|t| t.coefficient).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.terms.iter().map(Term::label).collect()
    }

    /// Row `k` is the exponent vector of term `k`.
    pub fn mon_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.rank, self.terms.iter().map(|t| t.exponent.clone()).collect())
            .expect("exponent lengths are checked on construction")
    }

    /// Keeps the terms at `idx`, in that order.
    pub fn select(&self, idx: &[usize]) -> Self {
        Superpotential { rank: self.rank, terms: idx.iter().map(|&i| self.terms[i].clone()).collect() }
    }

    /// Re-embeds into a torus of rank `before + rank + after`.
    pub(crate) fn padded(&self, before: usize, after: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut e = vec![Integer::zero(); before];
                e.extend(t.exponent.iter().cloned());
                e.extend(std::iter::repeat_n(Integer::zero(), after));
                Term::new(t.coefficient, e)
            })
            .collect();
        Superpotential { rank: before + self.rank + after, terms }
    }
}

/// `t1^2t3`, `t2^-1`, or `1` for the trivial character.
pub fn monomial_label(exponent: &[Integer]) -> String {
    let mut s = String::new();
    for (i, e) in exponent.iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        s.push_str(&format!("t{}", i + 1));
        if *e != int(1) {
            s.push_str(&format!("^{e}"));
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

/// Monomial support of the generic section of `⊕ O(a_i)` over `P^1`, unit
/// coefficients: `t1^j t_{i+1}` for `0 ≤ j ≤ -a_i`. Positive degrees give no
/// terms.
pub fn generic_sections(degrees: &[i64]) -> Superpotential {
    let rank = 1 + degrees.len();
    let mut terms = Vec::new();
    for (i, &a) in degrees.iter().enumerate() {
        for j in 0..=(-a).max(-1) {
            let mut e = vec![Integer::zero(); rank];
            e[0] = int(j);
            e[i + 1] = int(1);
            terms.push(Term::new(Complex64::new(1.0, 0.0), e));
        }
    }
    Superpotential { rank, terms }
}

/// Orders of vanishing `⟨ξ_i, v_k⟩`: rows are divisors, columns monomials.
pub fn order_matrix(x: &ToricData, w: &Superpotential) -> Result<IntMatrix, Error> {
    if x.rank != w.rank() {
        return Err(Error::ShapeMismatch(format!("variety rank {} but potential rank {}", x.rank, w.rank())));
    }
    Ok(&x.dv * &w.mon_matrix().transpose())
}

/// `W` is regular iff it vanishes to nonnegative order along every divisor.
pub fn is_regular(x: &ToricData, w: &Superpotential) -> bool {
    x.rank == w.rank() && x.dv.rows().all(|v| w.terms().iter().all(|t| !dot(v, &t.exponent).is_negative()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::p1_bundle;

    #[test]
    fn generic_section_supports() {
        let w = generic_sections(&[-2]);
        assert_eq!(w.mon_matrix(), IntMatrix::from_i64_rows(&[&[0, 1], &[1, 1], &[2, 1]]));
        assert_eq!(w.labels(), vec!["t2", "t1t2", "t1^2t2"]);
        let w = generic_sections(&[-1, -1]);
        assert_eq!(w.labels(), vec!["t2", "t1t2", "t3", "t1t3"]);
        assert!(generic_sections(&[1]).is_empty());
        assert_eq!(generic_sections(&[0, 2]).labels(), vec!["t2"]);
    }

    #[test]
    fn orders_along_divisors() {
        let x = p1_bundle(&[-2]);
        let w = generic_sections(&[-2]);
        assert!(is_regular(&x, &w));
        assert_eq!(order_matrix(&x, &w).unwrap(), IntMatrix::from_i64_rows(&[&[0, 1, 2], &[2, 1, 0], &[1, 1, 1]]));
        let t1 = Superpotential::from_mon(&IntMatrix::from_i64_rows(&[&[1, 0]]), &[Complex64::new(1.0, 0.0)]).unwrap();
        assert!(!is_regular(&x, &t1));
        assert!(is_regular(&x, &Superpotential::zero(2)));
    }

    #[test]
    fn invalid_potentials() {
        let one = Complex64::new(1.0, 0.0);
        let m = IntMatrix::from_i64_rows(&[&[1, 0], &[1, 0]]);
        assert!(matches!(Superpotential::from_mon(&m, &[one, one]), Err(Error::InvalidPotential(_))));
        let m = IntMatrix::from_i64_rows(&[&[1, 0]]);
        assert!(matches!(Superpotential::from_mon(&m, &[Complex64::zero()]), Err(Error::InvalidPotential(_))));
    }

    #[test]
    fn labels() {
        assert_eq!(monomial_label(&[int(0), int(0)]), "1");
        assert_eq!(monomial_label(&[int(-1), int(3)]), "t1^-1t2^3");
    }
}
