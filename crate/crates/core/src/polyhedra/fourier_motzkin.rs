//! Fourier–Motzkin elimination over exact rationals with mixed strict and
//! non-strict inequalities.
//!
//! Every derived inequality carries its nonnegative multipliers over the input
//! rows, so an infeasible system comes back with a Farkas certificate and a
//! feasible one with an explicit point obtained by back-substitution.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use crate::scalar::{Scalar, Q};

/// `coeffs · x + constant > 0` when `strict`, `≥ 0` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality<T: Scalar> {
    pub coeffs: Vec<Q<T>>,
    pub constant: Q<T>,
    pub strict: bool,
}

impl<T: Scalar> Inequality<T> {
    pub fn new(coeffs: Vec<Q<T>>, constant: Q<T>, strict: bool) -> Self {
        Inequality { coeffs, constant, strict }
    }

    pub fn holds_at(&self, x: &[Q<T>]) -> bool {
        let v = self.value_at(x);
        if self.strict {
            v.is_positive()
        } else {
            !v.is_negative()
        }
    }

    pub fn value_at(&self, x: &[Q<T>]) -> Q<T> {
        self.coeffs.iter().zip(x).fold(self.constant.clone(), |acc, (a, v)| acc + a.clone() * v.clone())
    }
}

/// Nonnegative multipliers `λ` over the input rows with `Σ λ_i a_i = 0` and
/// either `Σ λ_i b_i < 0`, or `Σ λ_i b_i = 0` with some strict row weighted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate<T: Scalar> {
    pub multipliers: Vec<Q<T>>,
}

impl<T: Scalar> Certificate<T> {
    /// Replays the certificate against `rows`, independently of how it was found.
    pub fn verify(&self, rows: &[Inequality<T>], dim: usize) -> bool {
        if self.multipliers.len() != rows.len() || self.multipliers.iter().any(Signed::is_negative) {
            return false;
        }
        for k in 0..dim {
            let s = rows.iter().zip(&self.multipliers).fold(Q::<T>::zero(), |acc, (r, l)| acc + l.clone() * r.coeffs[k].clone());
            if !s.is_zero() {
                return false;
            }
        }
        let b = rows.iter().zip(&self.multipliers).fold(Q::<T>::zero(), |acc, (r, l)| acc + l.clone() * r.constant.clone());
        b.is_negative() || (b.is_zero() && rows.iter().zip(&self.multipliers).any(|(r, l)| r.strict && l.is_positive()))
    }
}

#[derive(Clone, Debug)]
pub enum Feasibility<T: Scalar> {
    Feasible(Vec<Q<T>>),
    Infeasible(Certificate<T>),
}

impl<T: Scalar> Feasibility<T> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

#[derive(Clone, Debug)]
struct Derived<T: Scalar> {
    ineq: Inequality<T>,
    multipliers: Vec<Q<T>>,
}

impl<T: Scalar> Derived<T> {
    /// Scales by a positive factor so the first nonzero coefficient is ±1.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.ineq.coeffs.iter().find(|c| !c.is_zero()).map(Signed::abs) {
            if !lead.is_one() {
                for c in self.ineq.coeffs.iter_mut().chain(std::iter::once(&mut self.ineq.constant)) {
                    *c = c.clone() / lead.clone();
                }
                for m in &mut self.multipliers {
                    *m = m.clone() / lead.clone();
                }
            }
        }
        self
    }

    fn is_trivial(&self) -> bool {
        self.ineq.coeffs.iter().all(Zero::is_zero)
    }

    /// `self` implies `other` (same normalized coefficients).
    fn at_least_as_tight(&self, other: &Self) -> bool {
        self.ineq.constant < other.ineq.constant || (self.ineq.constant == other.ineq.constant && (self.ineq.strict || !other.ineq.strict))
    }
}

/// Decides whether the system of inequalities in `dim` unknowns has a solution.
pub fn feasibility<T: Scalar>(rows: &[Inequality<T>], dim: usize) -> Feasibility<T> {
    let m = rows.len();
    let mut current: Vec<Derived<T>> = Vec::with_capacity(m);
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r.coeffs.len(), dim, "inequality width mismatch");
        let mut multipliers = vec![Q::<T>::zero(); m];
        multipliers[i] = Q::one();
        current.push(Derived { ineq: r.clone(), multipliers }.normalized());
    }

    let mut levels: Vec<Vec<Inequality<T>>> = Vec::with_capacity(dim + 1);
    for k in 0..=dim {
        current = match reduce(current) {
            Ok(c) => c,
            Err(cert) => return Feasibility::Infeasible(cert),
        };
        levels.push(current.iter().map(|d| d.ineq.clone()).collect());
        if k == dim {
            break;
        }
        current = eliminate(current, k);
    }

    // back-substitution, last variable first
    let mut x = vec![Q::<T>::zero(); dim];
    for k in (0..dim).rev() {
        x[k] = pick_value(&levels[k], k, &x);
    }
    debug_assert!(rows.iter().all(|r| r.holds_at(&x)));
    Feasibility::Feasible(x)
}

/// Drops satisfied constant rows, detects violated ones and removes rows
/// implied by a parallel tighter row.
fn reduce<T: Scalar>(rows: Vec<Derived<T>>) -> Result<Vec<Derived<T>>, Certificate<T>> {
    let mut out: Vec<Derived<T>> = Vec::with_capacity(rows.len());
    let mut index: HashMap<Vec<Q<T>>, usize> = HashMap::new();
    for d in rows {
        if d.is_trivial() {
            let ok = if d.ineq.strict { d.ineq.constant.is_positive() } else { !d.ineq.constant.is_negative() };
            if !ok {
                return Err(Certificate { multipliers: d.multipliers });
            }
            continue;
        }
        match index.get(&d.ineq.coeffs) {
            Some(&i) => {
                if d.at_least_as_tight(&out[i]) {
                    out[i] = d;
                }
            }
            None => {
                index.insert(d.ineq.coeffs.clone(), out.len());
                out.push(d);
            }
        }
    }
    Ok(out)
}

fn eliminate<T: Scalar>(rows: Vec<Derived<T>>, k: usize) -> Vec<Derived<T>> {
    let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
    for d in rows {
        let c = &d.ineq.coeffs[k];
        if c.is_positive() {
            pos.push(d);
        } else if c.is_negative() {
            neg.push(d);
        } else {
            rest.push(d);
        }
    }
    for p in &pos {
        for n in &neg {
            let wp = -n.ineq.coeffs[k].clone();
            let wn = p.ineq.coeffs[k].clone();
            let combine = |a: &Q<T>, b: &Q<T>| wp.clone() * a.clone() + wn.clone() * b.clone();
            let mut coeffs: Vec<Q<T>> = p.ineq.coeffs.iter().zip(&n.ineq.coeffs).map(|(a, b)| combine(a, b)).collect();
            coeffs[k] = Q::zero();
            let ineq = Inequality { coeffs, constant: combine(&p.ineq.constant, &n.ineq.constant), strict: p.ineq.strict || n.ineq.strict };
            let multipliers = p.multipliers.iter().zip(&n.multipliers).map(|(a, b)| combine(a, b)).collect();
            rest.push(Derived { ineq, multipliers }.normalized());
        }
    }
    rest
}

/// Chooses `x[k]` inside the interval cut out by the level-`k` rows, with the
/// later coordinates already fixed.
fn pick_value<T: Scalar>(rows: &[Inequality<T>], k: usize, x: &[Q<T>]) -> Q<T> {
    let mut lower: Option<(Q<T>, bool)> = None;
    let mut upper: Option<(Q<T>, bool)> = None;
    for r in rows {
        let a = &r.coeffs[k];
        if a.is_zero() {
            continue;
        }
        let rest = (k + 1..x.len()).fold(r.constant.clone(), |acc, j| acc + r.coeffs[j].clone() * x[j].clone());
        let bound = -rest / a.clone();
        if a.is_positive() {
            if lower.as_ref().is_none_or(|(l, s)| bound > *l || (bound == *l && r.strict && !*s)) {
                lower = Some((bound, r.strict));
            }
        } else if upper.as_ref().is_none_or(|(u, s)| bound < *u || (bound == *u && r.strict && !*s)) {
            upper = Some((bound, r.strict));
        }
    }
    let two = Q::<T>::one() + Q::one();
    match (lower, upper) {
        (None, None) => Q::zero(),
        (Some((l, _)), None) => l.floor() + Q::one(),
        (None, Some((u, _))) => u.ceil() - Q::one(),
        (Some((l, _)), Some((u, _))) if l == u => l,
        (Some((l, _)), Some((u, _))) => (l + u) / two,
    }
}
