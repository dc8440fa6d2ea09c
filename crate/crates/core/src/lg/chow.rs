//! Classes in `coker ⊗ C/Z`, stored by an explicit lift.

use num_traits::{One, Zero};

use crate::{ChowGroup, ComplexRational, Error, Rational};

/// A class in `coker(a) ⊗ C/Z`. Two lifts give the same class iff they differ
/// by an integer vector plus a complex combination of the columns of `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowClass {
    lift: Vec<ComplexRational>,
    group: ChowGroup,
}

fn cq(re: Rational, im: Rational) -> ComplexRational {
    ComplexRational::new(re, im)
}

impl ChowClass {
    pub fn new(group: ChowGroup, lift: Vec<ComplexRational>) -> Result<Self, Error> {
        if lift.len() != group.codomain_rank {
            return Err(Error::ShapeMismatch(format!("lift of length {} for a group on {} generators", lift.len(), group.codomain_rank)));
        }
        Ok(ChowClass { lift, group })
    }

    pub fn zero(group: ChowGroup) -> Self {
        let lift = vec![ComplexRational::zero(); group.codomain_rank];
        ChowClass { lift, group }
    }

    /// The class whose free coordinates are `values`.
    ///
    /// The lift is supported on the lexicographically last set of generators
    /// whose free-coordinate minor is invertible; with one free coordinate
    /// that is the last generator with a nonzero coefficient.
    pub fn from_class_values(group: ChowGroup, values: &[ComplexRational]) -> Result<Self, Error> {
        let f = group.free_rank;
        if values.len() != f {
            return Err(Error::ShapeMismatch(format!("{} class values for free rank {f}", values.len())));
        }
        let r = group.codomain_rank;
        let p = group.free_projection();
        let mut lift = vec![ComplexRational::zero(); r];
        if f > 0 {
            let (support, inv) = last_invertible_minor(&p).expect("free projection is surjective");
            for (a, &j) in support.iter().enumerate() {
                let mut acc = ComplexRational::zero();
                for (b, v) in values.iter().enumerate() {
                    acc += v.clone() * inv[a][b].clone();
                }
                lift[j] = acc;
            }
        }
        debug_assert_eq!(ChowClass { lift: lift.clone(), group: group.clone() }.class_values(), values);
        Ok(ChowClass { lift, group })
    }

    /// `i · values` on the free coordinates: the class with imaginary part
    /// `values` and no real part.
    pub fn imaginary(group: ChowGroup, values: &[Rational]) -> Result<Self, Error> {
        let v: Vec<ComplexRational> = values.iter().map(|x| cq(Rational::zero(), x.clone())).collect();
        Self::from_class_values(group, &v)
    }

    pub fn lift(&self) -> &[ComplexRational] {
        &self.lift
    }

    pub fn group(&self) -> &ChowGroup {
        &self.group
    }

    pub fn im_lift(&self) -> Vec<Rational> {
        self.lift.iter().map(|z| z.im.clone()).collect()
    }

    pub fn re_lift(&self) -> Vec<Rational> {
        self.lift.iter().map(|z| z.re.clone()).collect()
    }

    /// Free coordinates of the lift; exact, with the real parts defined
    /// modulo one.
    pub fn class_values(&self) -> Vec<ComplexRational> {
        let p = self.group.free_projection();
        (0..p.nrows())
            .map(|i| {
                p.row(i)
                    .iter()
                    .zip(&self.lift)
                    .fold(ComplexRational::zero(), |acc, (c, z)| acc + z.clone() * cq(Rational::from_integer(c.clone()), Rational::zero()))
            })
            .collect()
    }

    pub fn equivalent(&self, other: &ChowClass) -> Result<bool, Error> {
        if self.group != other.group {
            return Err(Error::GroupMismatch("classes in different groups".into()));
        }
        let a = self.class_values();
        let b = other.class_values();
        Ok(a.iter().zip(&b).all(|(x, y)| {
            let d = x.clone() - y.clone();
            d.im.is_zero() && d.re.is_integer()
        }))
    }

    /// The class with the same lift read in another presentation.
    pub fn reinterpret(&self, group: ChowGroup) -> Result<Self, Error> {
        Self::new(group, self.lift.clone())
    }
}

/// The lexicographically last column set of size `rows` with an invertible
/// minor, and the inverse of that minor.
pub(crate) fn last_invertible_minor(p: &crate::IntMatrix) -> Option<(Vec<usize>, Vec<Vec<Rational>>)> {
    use itertools::Itertools;
    let (f, r) = p.shape();
    let all: Vec<Vec<usize>> = (0..r).combinations(f).collect();
    for cols in all.into_iter().rev() {
        let mut m = crate::IntMatrix::zeros(f, f);
        for i in 0..f {
            for (b, &j) in cols.iter().enumerate() {
                m[(i, b)] = p[(i, j)].clone();
            }
        }
        if let Some(inv) = m.rational_inverse() {
            return Some((cols, inv));
        }
    }
    None
}

/// `re + im·i`.
pub fn complex_rational(re: Rational, im: Rational) -> ComplexRational {
    cq(re, im)
}

pub(crate) fn unit_i() -> ComplexRational {
    cq(Rational::zero(), Rational::one())
}
