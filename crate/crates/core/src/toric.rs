//! Toric varieties presented by their divisor (ray) matrix.

use num_traits::{One, Zero};

use crate::linalg::{cokernel, gcd_slice};
use crate::{int, ChowGroup, Error, HalfspaceSystem, IntMatrix, Integer, KopasepticFailure, Rational};

/// A toric variety of lattice rank `rank`, one `dv` row per torus-invariant
/// prime divisor. Row `k` is the primitive ray generator `v_k`, so the order
/// of a character `χ` along divisor `k` is `⟨χ, v_k⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricData {
    pub rank: usize,
    pub divisors: Vec<String>,
    pub dv: IntMatrix,
}

/// A split bundle `⊕ O(-D_j)` over `base`; column `j` lists the coefficients
/// of `D_j` on the base divisors.
#[derive(Clone, Debug)]
pub struct BundleSpec {
    pub base: ToricData,
    pub divisor_columns: IntMatrix,
}

/// For every input row, the divisor it becomes or `None` if it was dropped.
pub type KMap = Vec<Option<usize>>;

impl ToricData {
    pub fn new(divisors: Vec<String>, dv: IntMatrix) -> Result<Self, Error> {
        if divisors.len() != dv.nrows() {
            return Err(Error::ShapeMismatch(format!("{} divisor labels for {} dv rows", divisors.len(), dv.nrows())));
        }
        Ok(ToricData { rank: dv.ncols(), divisors, dv })
    }

    /// Rank-0 variety with no divisors; the unit for [`product`].
    pub fn point() -> Self {
        ToricData { rank: 0, divisors: Vec::new(), dv: IntMatrix::zeros(0, 0) }
    }

    pub fn divisor_count(&self) -> usize {
        self.dv.nrows()
    }

    pub fn chow_group(&self) -> ChowGroup {
        cokernel(&self.dv)
    }

    pub fn rows_primitive(&self) -> bool {
        (0..self.dv.nrows()).all(|i| self.dv.row_gcd(i).is_one())
    }
}

/// `P^1` with divisors `f0 = {t1 = 0}` and `fInf = {t1 = ∞}`.
pub fn projective_line() -> ToricData {
    ToricData::new(vec!["f0".into(), "fInf".into()], IntMatrix::from_i64_rows(&[&[1], &[-1]])).expect("valid")
}

/// Total space of the split bundle described by `spec`:
///
/// ```text
/// dv_X = [ dv_Y | D_1 ... D_c ]
///        [  0   |     I       ]
/// ```
///
/// Divisors are the base divisors followed by `X1 .. Xc`.
pub fn split_bundle_total_space(spec: &BundleSpec) -> Result<ToricData, Error> {
    let base = &spec.base;
    let d = &spec.divisor_columns;
    if d.nrows() != base.divisor_count() {
        return Err(Error::ShapeMismatch(format!("{} divisor coefficients for a base with {} divisors", d.nrows(), base.divisor_count())));
    }
    let (r, n, c) = (base.divisor_count(), base.rank, d.ncols());
    let mut dv = IntMatrix::zeros(r + c, n + c);
    for i in 0..r {
        for j in 0..n {
            dv[(i, j)] = base.dv[(i, j)].clone();
        }
        for j in 0..c {
            dv[(i, n + j)] = d[(i, j)].clone();
        }
    }
    for j in 0..c {
        dv[(r + j, n + j)] = Integer::one();
    }
    let mut divisors = base.divisors.clone();
    divisors.extend((1..=c).map(|j| format!("X{j}")));
    ToricData::new(divisors, dv)
}

/// `Tot(O(a_1) ⊕ ... ⊕ O(a_c))` over `P^1`. The degrees are the user-facing
/// `a_i`; internally `D_j = -a_j [∞]`.
pub fn p1_bundle(degrees: &[i64]) -> ToricData {
    let base = projective_line();
    let mut cols = IntMatrix::zeros(2, degrees.len());
    for (j, &a) in degrees.iter().enumerate() {
        cols[(1, j)] = int(-a);
    }
    split_bundle_total_space(&BundleSpec { base, divisor_columns: cols }).expect("shapes agree")
}

/// `X × Y`: block-diagonal `dv`. Labels are tagged with `.1` / `.2` only when
/// the two label sets collide.
pub fn product(x: &ToricData, y: &ToricData) -> ToricData {
    let collide = x.divisors.iter().any(|l| y.divisors.contains(l));
    let tag = |labels: &[String], t: &str| -> Vec<String> {
        labels.iter().map(|l| if collide { format!("{l}.{t}") } else { l.clone() }).collect()
    };
    let mut divisors = tag(&x.divisors, "1");
    divisors.extend(tag(&y.divisors, "2"));
    ToricData::new(divisors, x.dv.direct_sum(&y.dv)).expect("labels match rows")
}

/// Reconstructs `X(C, c)` from a halfspace system: the facet rows in input
/// order become the divisors, labelled `D1 ..` by input row.
pub fn from_linear_data(c: &IntMatrix, offset: &[Rational]) -> Result<(ToricData, KMap), Error> {
    let labels: Vec<String> = (1..=c.nrows()).map(|i| format!("D{i}")).collect();
    from_linear_data_labeled(c, offset, &labels)
}

pub fn from_linear_data_labeled(c: &IntMatrix, offset: &[Rational], labels: &[String]) -> Result<(ToricData, KMap), Error> {
    if labels.len() != c.nrows() {
        return Err(Error::ShapeMismatch(format!("{} labels for {} rows", labels.len(), c.nrows())));
    }
    let h = HalfspaceSystem::new(c.clone(), offset.to_vec())?;
    let facets = h.facets().map_err(|e| match e {
        Error::EmptyInterior => Error::NotKopaseptic(KopasepticFailure::EmptyInterior),
        other => other,
    })?;
    // k sends generators to generators or zero, so a facet row must already
    // be primitive.
    for &i in &facets.irredundant {
        let g = gcd_slice(c.row(i));
        if !g.is_one() {
            debug_assert!(!g.is_zero());
            return Err(Error::NotKopaseptic(KopasepticFailure::NoKMap));
        }
    }
    let divisors = facets.irredundant.iter().map(|&i| labels[i].clone()).collect();
    let dv = c.select_rows(&facets.irredundant);
    Ok((ToricData::new(divisors, dv)?, facets.k_map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_integer(int(v))
    }

    #[test]
    fn projective_line_data() {
        let p = projective_line();
        assert_eq!(p.dv, IntMatrix::from_i64_rows(&[&[1], &[-1]]));
        let c = p.chow_group();
        assert_eq!(c.free_rank, 1);
        assert!(c.torsion.is_empty());
        let (x, k) = from_linear_data(&p.dv, &[q(0), q(1)]).unwrap();
        assert_eq!(x.dv, p.dv);
        assert_eq!(k, vec![Some(0), Some(1)]);
    }

    #[test]
    fn line_bundles() {
        for k in 0..6 {
            let x = p1_bundle(&[-k]);
            assert_eq!(x.dv, IntMatrix::from_i64_rows(&[&[1, 0], &[-1, k], &[0, 1]]));
            assert_eq!(x.divisors, vec!["f0", "fInf", "X1"]);
        }
    }

    #[test]
    fn rank_two_bundles() {
        for k in -1..5 {
            let x = p1_bundle(&[k, -k - 2]);
            assert_eq!(x.dv, IntMatrix::from_i64_rows(&[&[1, 0, 0], &[-1, -k, k + 2], &[0, 1, 0], &[0, 0, 1]]));
        }
    }

    #[test]
    fn trivial_bundle() {
        let x = p1_bundle(&[0]);
        assert_eq!(x.dv, IntMatrix::from_i64_rows(&[&[1, 0], &[-1, 0], &[0, 1]]));
    }

    #[test]
    fn products() {
        let p = product(&projective_line(), &projective_line());
        assert_eq!(p.dv, IntMatrix::from_i64_rows(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]));
        assert_eq!(p.divisors, vec!["f0.1", "fInf.1", "f0.2", "fInf.2"]);
        let x = p1_bundle(&[-2]);
        assert_eq!(product(&x, &ToricData::point()), x);
    }

    #[test]
    fn reconstruction() {
        let x = p1_bundle(&[-2]);
        let (y, k) = from_linear_data(&x.dv, &[q(0), q(1), q(0)]).unwrap();
        assert_eq!(y.dv, x.dv);
        assert_eq!(k, vec![Some(0), Some(1), Some(2)]);
        let (y, k) = from_linear_data(&x.dv, &[q(0), q(-1), q(0)]).unwrap();
        assert_eq!(y.divisor_count(), 2);
        assert_eq!(k, vec![Some(0), Some(1), None]);
    }

    #[test]
    fn doubled_rows_are_rejected() {
        let c = IntMatrix::from_i64_rows(&[&[2], &[-2]]);
        assert!(matches!(from_linear_data(&c, &[q(0), q(2)]), Err(Error::NotKopaseptic(KopasepticFailure::NoKMap))));
        assert!(matches!(from_linear_data(&c, &[q(0), q(0)]), Err(Error::NotKopaseptic(KopasepticFailure::EmptyInterior))));
    }
}
