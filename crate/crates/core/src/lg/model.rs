//! LG models, their linear data and the duality swap.

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};

use super::chow::{unit_i, ChowClass};
use super::potential::{is_regular, Superpotential};
use crate::linalg::cokernel;
use crate::toric::{from_linear_data_labeled, product, KMap};
use crate::{ComplexRational, Error, IntMatrix, KopasepticFailure, Rational, ToricData};

/// A toric LG model `(X, W, K)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LgModel {
    pub variety: ToricData,
    pub potential: Superpotential,
    pub k_class: ChowClass,
}

/// The pairs `(a, k)` and `(b, l)`; for a model these are `(dv, K)` and
/// `(mon, L)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearData {
    pub a: IntMatrix,
    pub k: ChowClass,
    pub b: IntMatrix,
    pub l: ChowClass,
}

/// Outcome of the three kopaseptic conditions for `(a, Im k)` paired with `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KopasepticReport {
    pub interior_nonempty: bool,
    pub k_map_exists: bool,
    pub orders_nonnegative: bool,
    /// Present whenever the first two conditions hold.
    pub k_map: Option<KMap>,
}

impl KopasepticReport {
    pub fn passes(&self) -> bool {
        self.interior_nonempty && self.k_map_exists && self.orders_nonnegative
    }

    pub fn first_failure(&self) -> Option<KopasepticFailure> {
        if !self.interior_nonempty {
            Some(KopasepticFailure::EmptyInterior)
        } else if !self.k_map_exists {
            Some(KopasepticFailure::NoKMap)
        } else if !self.orders_nonnegative {
            Some(KopasepticFailure::NegativeOrders)
        } else {
            None
        }
    }

    /// Reconstruction returns every input row as a divisor, in order.
    pub fn k_map_is_identity(&self) -> bool {
        self.k_map.as_ref().is_some_and(|k| k.iter().enumerate().all(|(i, f)| *f == Some(i)))
    }
}

impl LgModel {
    pub fn new(variety: ToricData, potential: Superpotential, k_class: ChowClass) -> Result<Self, Error> {
        if potential.rank() != variety.rank {
            return Err(Error::InvalidPotential(format!(
                "potential on a rank-{} torus, variety has rank {}",
                potential.rank(),
                variety.rank
            )));
        }
        if !is_regular(&variety, &potential) {
            return Err(Error::NotRegular);
        }
        if *k_class.group() != variety.chow_group() {
            return Err(Error::GroupMismatch("K is not a class on the variety".into()));
        }
        Ok(LgModel { variety, potential, k_class })
    }

    /// `K` with the given class values on the free Chow coordinates.
    pub fn with_class_values(variety: ToricData, potential: Superpotential, values: &[ComplexRational]) -> Result<Self, Error> {
        let k = ChowClass::from_class_values(variety.chow_group(), values)?;
        Self::new(variety, potential, k)
    }

    /// `K = i` on every free Chow coordinate.
    pub fn with_default_class(variety: ToricData, potential: Superpotential) -> Result<Self, Error> {
        let f = variety.chow_group().free_rank;
        Self::with_class_values(variety, potential, &vec![unit_i(); f])
    }

    pub fn mon_matrix(&self) -> IntMatrix {
        self.potential.mon_matrix()
    }

    /// `L = i` on every free coordinate of `coker(mon)`.
    pub fn default_l(&self) -> ChowClass {
        let g = cokernel(&self.mon_matrix());
        let f = g.free_rank;
        ChowClass::from_class_values(g, &vec![unit_i(); f]).expect("lengths agree")
    }

    pub fn linear_data(&self, l: ChowClass) -> Result<LinearData, Error> {
        if *l.group() != cokernel(&self.mon_matrix()) {
            return Err(Error::GroupMismatch("L is not a class on coker(mon)".into()));
        }
        LinearData::new(self.variety.dv.clone(), self.k_class.clone(), self.mon_matrix(), l)
    }

    pub fn default_linear_data(&self) -> LinearData {
        self.linear_data(self.default_l()).expect("default L lives on coker(mon)")
    }
}

impl LinearData {
    pub fn new(a: IntMatrix, k: ChowClass, b: IntMatrix, l: ChowClass) -> Result<Self, Error> {
        if a.ncols() != b.ncols() {
            return Err(Error::ShapeMismatch(format!("a has {} columns, b has {}", a.ncols(), b.ncols())));
        }
        if *k.group() != cokernel(&a) {
            return Err(Error::GroupMismatch("k is not a class on coker(a)".into()));
        }
        if *l.group() != cokernel(&b) {
            return Err(Error::GroupMismatch("l is not a class on coker(b)".into()));
        }
        Ok(LinearData { a, k, b, l })
    }

    /// `(b, l)` and `(a, k)`.
    pub fn swapped(&self) -> LinearData {
        LinearData { a: self.b.clone(), k: self.l.clone(), b: self.a.clone(), l: self.k.clone() }
    }
}

/// Checks `(a, Im k)` kopaseptic and `a·bᵀ ≥ 0`.
pub fn is_kopaseptic(d: &LinearData) -> KopasepticReport {
    let labels: Vec<String> = (0..d.a.nrows()).map(|i| i.to_string()).collect();
    let (interior_nonempty, k_map_exists, k_map) = match from_linear_data_labeled(&d.a, &d.k.im_lift(), &labels) {
        Ok((_, k)) => (true, true, Some(k)),
        Err(Error::NotKopaseptic(KopasepticFailure::NoKMap)) => (true, false, None),
        Err(_) => (false, false, None),
    };
    let orders = &d.a * &d.b.transpose();
    let orders_nonnegative = orders.rows().all(|r| r.iter().all(|v| !v.is_negative()));
    KopasepticReport { interior_nonempty, k_map_exists, orders_nonnegative, k_map }
}

/// `C/Z → C*`, `z ↦ exp(2πi z)`.
pub fn exp_coefficient(z: &ComplexRational) -> Complex64 {
    let re = z.re.to_f64().unwrap_or(0.0);
    let im = z.im.to_f64().unwrap_or(0.0);
    Complex64::from_polar((-TAU * im).exp(), TAU * re)
}

/// The dual model `(X(b, Im l), W(a, k), l)`, with divisors labelled by the
/// given names for the rows of `b`.
pub fn dualize_labeled(d: &LinearData, labels: &[String]) -> Result<LgModel, Error> {
    let report = is_kopaseptic(&d.swapped());
    if let Some(f) = report.first_failure() {
        return Err(Error::NotKopaseptic(f));
    }
    let (variety, k_map) = from_linear_data_labeled(&d.b, &d.l.im_lift(), labels)?;
    let coefficients: Vec<Complex64> = d.k.lift().iter().map(exp_coefficient).collect();
    let potential = Superpotential::from_mon(&d.a, &coefficients)?;
    let k_class = push_forward(&d.l, &k_map, variety.chow_group());
    LgModel::new(variety, potential, k_class)
}

pub fn dualize(d: &LinearData) -> Result<LgModel, Error> {
    let labels: Vec<String> = (1..=d.b.nrows()).map(|i| format!("D{i}")).collect();
    dualize_labeled(d, &labels)
}

/// Linear data of the dual model: `(b', k_*l)` and `(a, k)`, where `b'` keeps
/// the facet rows of `b`.
pub fn dual_linear_data(d: &LinearData) -> Result<LinearData, Error> {
    let m = dualize(d)?;
    let l = d.k.clone();
    m.linear_data(l)
}

/// Moves a lift along a generator-to-generator-or-zero map.
fn push_forward(class: &ChowClass, k_map: &KMap, target: crate::ChowGroup) -> ChowClass {
    let mut lift = vec![ComplexRational::new(Rational::from_integer(0.into()), Rational::from_integer(0.into())); target.codomain_rank];
    for (i, f) in k_map.iter().enumerate() {
        if let Some(f) = f {
            lift[*f] = lift[*f].clone() + class.lift()[i].clone();
        }
    }
    ChowClass::new(target, lift).expect("k maps onto the target generators")
}

/// `(X × Y, W + W', K + K')`.
pub fn sum_models(m1: &LgModel, m2: &LgModel) -> LgModel {
    let variety = product(&m1.variety, &m2.variety);
    let (n1, n2) = (m1.variety.rank, m2.variety.rank);
    let mut terms = m1.potential.padded(0, n2).terms().to_vec();
    terms.extend(m2.potential.padded(n1, 0).terms().iter().cloned());
    let potential = Superpotential::new(n1 + n2, terms).expect("padded supports stay distinct");
    let mut lift = m1.k_class.lift().to_vec();
    lift.extend(m2.k_class.lift().iter().cloned());
    let k_class = ChowClass::new(variety.chow_group(), lift).expect("lift covers every divisor");
    LgModel { variety, potential, k_class }
}
