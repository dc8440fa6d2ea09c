//! Self-duality: matrix search, bundle classification over `P^1`, and the
//! block-swap witness for `X × X^∨`.

use itertools::Itertools;
use num_traits::One;
use rayon::prelude::*;

use crate::lg::{dualize, generic_sections, is_kopaseptic, sum_models, ChowClass, LgModel, LinearData, Superpotential};
use crate::linalg::{right_equivalent, row_echelon_rank, Matrix};
use crate::scalar::{Scalar, Q};
use crate::toric::{from_linear_data, p1_bundle};
use crate::{int, Error, IntMatrix, Rational, ToricData};

/// `perm(mon_S) · basis_change = dv`, where row `i` of `perm(mon_S)` is row
/// `row_permutation[i]` of the monomial subset.
#[derive(Clone, Debug, PartialEq)]
pub struct SelfDualityWitness {
    /// Indices into the potential's terms.
    pub monomial_subset: Vec<usize>,
    pub row_permutation: Vec<usize>,
    pub basis_change: IntMatrix,
    pub k_lift: ChowClass,
}

impl SelfDualityWitness {
    /// Replays the witness against `(dv, mon)` by direct multiplication.
    pub fn verify_matrices(&self, dv: &IntMatrix, mon: &IntMatrix) -> bool {
        let r = dv.nrows();
        let n = dv.ncols();
        if self.monomial_subset.len() != r
            || self.row_permutation.len() != r
            || self.basis_change.shape() != (n, n)
            || mon.ncols() != n
            || self.monomial_subset.iter().any(|&i| i >= mon.nrows())
            || !self.monomial_subset.iter().all_unique()
            || !is_permutation(&self.row_permutation)
        {
            return false;
        }
        let rows: Vec<usize> = self.row_permutation.iter().map(|&p| self.monomial_subset[p]).collect();
        let lhs = &mon.select_rows(&rows) * &self.basis_change;
        lhs == *dv && self.basis_change.det().is_ok_and(|d| d.magnitude().is_one())
    }

    /// Matrix replay plus: reconstruction from `(dv, Im k_lift)` returns every
    /// divisor of `x` in order.
    pub fn verify(&self, x: &ToricData, w: &Superpotential) -> bool {
        if !self.verify_matrices(&x.dv, &w.mon_matrix()) || *self.k_lift.group() != x.chow_group() {
            return false;
        }
        let sub = w.select(&self.monomial_subset);
        let Ok(d) = LinearData::new(
            x.dv.clone(),
            self.k_lift.clone(),
            sub.mon_matrix(),
            ChowClass::zero(crate::linalg::cokernel(&sub.mon_matrix())),
        ) else {
            return false;
        };
        let report = is_kopaseptic(&d);
        report.passes() && report.k_map_is_identity()
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&i| i < p.len() && !std::mem::replace(&mut seen[i], true))
}

/// Classification flags and the self-duality verdict for `Tot(⊕ O(a_i))`.
#[derive(Clone, Debug, PartialEq)]
pub struct BundleVerdict {
    pub degrees: Vec<i64>,
    pub canonical_trivial: bool,
    pub polystable: bool,
    pub strong_cy: bool,
    /// Some monomial subset matches `dv` up to row order and basis change.
    pub matrix_self_dual: bool,
    /// Matrix match and a `K` reconstructing `X` with identity `k`.
    pub self_dual: bool,
    pub witness: Option<SelfDualityWitness>,
    /// First necessary condition that failed, when not self-dual.
    pub obstruction: Option<String>,
}

impl BundleVerdict {
    pub fn sum_of_degrees(&self) -> i64 {
        self.degrees.iter().sum()
    }
}

/// A row permutation `p` and unimodular `u` with `mon[p] · u = dv`.
pub type RowMatch<T> = (Vec<usize>, Matrix<T>);

/// Finds a row permutation `p` and unimodular `u` with `mon[p] · u = dv`.
///
/// Rows are assigned one at a time. A partial assignment survives only if
/// the row gcds agree and the assigned rows of `dv` and `mon` satisfy the
/// same linear relations; every complete assignment is decided exactly.
pub fn matrix_self_dual<T: Scalar>(dv: &Matrix<T>, mon: &Matrix<T>) -> Result<Option<RowMatch<T>>, Error> {
    if dv.nrows() != mon.nrows() || dv.ncols() != mon.ncols() {
        return Err(Error::ShapeMismatch(format!("dv is {:?}, mon is {:?}", dv.shape(), mon.shape())));
    }
    let r = dv.nrows();
    let gd: Vec<T> = (0..r).map(|i| dv.row_gcd(i)).collect();
    let gm: Vec<T> = (0..r).map(|i| mon.row_gcd(i)).collect();
    let mut ms = gd.clone();
    let mut mm = gm.clone();
    ms.sort();
    mm.sort();
    if ms != mm || dv.rank() != mon.rank() {
        return Ok(None);
    }
    let mut search = Search { dv, mon, gd: &gd, gm: &gm, perm: Vec::with_capacity(r), used: vec![false; r] };
    Ok(search.run())
}

struct Search<'a, T: Scalar> {
    dv: &'a Matrix<T>,
    mon: &'a Matrix<T>,
    gd: &'a [T],
    gm: &'a [T],
    perm: Vec<usize>,
    used: Vec<bool>,
}

impl<T: Scalar> Search<'_, T> {
    fn run(&mut self) -> Option<RowMatch<T>> {
        let i = self.perm.len();
        if i == self.dv.nrows() {
            let m = self.mon.select_rows(&self.perm);
            return right_equivalent(self.dv, &m).map(|u| (self.perm.clone(), u));
        }
        for j in 0..self.mon.nrows() {
            if self.used[j] || self.gm[j] != self.gd[i] {
                continue;
            }
            self.perm.push(j);
            self.used[j] = true;
            if self.prefix_consistent() {
                if let Some(found) = self.run() {
                    return Some(found);
                }
            }
            self.used[j] = false;
            self.perm.pop();
        }
        None
    }

    /// `rank dv_p = rank mon_p = rank [dv_p | mon_p]`.
    fn prefix_consistent(&self) -> bool {
        let k = self.perm.len();
        let n = self.dv.ncols();
        let mut joint: Vec<Vec<Q<T>>> = Vec::with_capacity(k);
        for (i, &j) in self.perm.iter().enumerate() {
            let mut row: Vec<Q<T>> = self.dv.row(i).iter().cloned().map(Q::from_integer).collect();
            row.extend(self.mon.row(j).iter().cloned().map(Q::from_integer));
            joint.push(row);
        }
        let left: Vec<Vec<Q<T>>> = joint.iter().map(|r| r[..n].to_vec()).collect();
        let right: Vec<Vec<Q<T>>> = joint.iter().map(|r| r[n..].to_vec()).collect();
        let rl = row_echelon_rank(left);
        rl == row_echelon_rank(right) && rl == row_echelon_rank(joint)
    }
}

enum KSearch {
    Found(ChowClass),
    Missing,
}

/// Tries `Im K = ±1` on the free Chow coordinates, all-positive first.
fn find_k(x: &ToricData) -> KSearch {
    let g = x.chow_group();
    let f = g.free_rank;
    for signs in (0..f).map(|_| [1i64, -1]).multi_cartesian_product().chain((f == 0).then(Vec::new)) {
        let values: Vec<Rational> = signs.iter().map(|&s| Rational::from_integer(int(s))).collect();
        let k = ChowClass::imaginary(g.clone(), &values).expect("one value per free coordinate");
        if let Ok((_, kmap)) = from_linear_data(&x.dv, &k.im_lift()) {
            if kmap.iter().enumerate().all(|(i, m)| *m == Some(i)) {
                return KSearch::Found(k);
            }
        }
    }
    KSearch::Missing
}

/// Outcome of the self-duality search on an arbitrary `(X, W)`.
#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub matrix_witness: Option<(Vec<usize>, Vec<usize>, IntMatrix)>,
    pub witness: Option<SelfDualityWitness>,
    pub obstruction: Option<String>,
}

/// Looks for a subset of the monomials of `w`, one per divisor of `x`,
/// matching `dv` up to row order and basis change, and a sign choice of `K`
/// under which `x` reconstructs itself.
pub fn search_self_dual(x: &ToricData, w: &Superpotential) -> SearchOutcome {
    let r = x.divisor_count();
    let mon = w.mon_matrix();
    let fail = |why: String| SearchOutcome { matrix_witness: None, witness: None, obstruction: Some(why) };
    if w.rank() != x.rank {
        return fail(format!("potential has rank {}, variety has rank {}", w.rank(), x.rank));
    }
    if w.len() < r {
        return fail(format!("W has {} monomials, fewer than the {r} divisors", w.len()));
    }
    let (rd, rm) = (x.dv.rank(), mon.rank());
    if rm < rd {
        return fail(format!("mon has rank {rm}, dv has rank {rd}"));
    }
    // few subsets: scanning them directly beats the basis enumeration
    let few = (0..w.len()).combinations(r).nth(16).is_none();
    let found = if few { None } else { matching_subsets(&x.dv, &mon) };
    let candidates: Box<dyn Iterator<Item = Vec<usize>>> = match found {
        Some(found) => Box::new(found.into_iter()),
        None => Box::new((0..w.len()).combinations(r)),
    };
    let mut matrix_witness = None;
    for subset in candidates {
        let sub = mon.select_rows(&subset);
        if let Ok(Some((perm, u))) = matrix_self_dual(&x.dv, &sub) {
            matrix_witness = Some((subset, perm, u));
            break;
        }
    }
    let Some((subset, perm, u)) = matrix_witness else {
        return fail("no monomial subset equals dv up to row order and basis change".into());
    };
    match find_k(x) {
        KSearch::Found(k) => {
            let witness =
                SelfDualityWitness { monomial_subset: subset.clone(), row_permutation: perm.clone(), basis_change: u.clone(), k_lift: k };
            debug_assert!(witness.verify(x, w));
            SearchOutcome { matrix_witness: Some((subset, perm, u)), witness: Some(witness), obstruction: None }
        }
        KSearch::Missing => SearchOutcome {
            matrix_witness: Some((subset, perm, u)),
            witness: None,
            obstruction: Some("no sign choice of K reconstructs X with every divisor kept".into()),
        },
    }
}

/// Every subset `S` of the rows of `mon`, sorted, with `mon_S` matching `dv` up
/// to row order and basis change. `None` when `dv` lacks full column rank.
///
/// A match sends a fixed row basis `B` of `dv` onto some rows `J` of `mon`,
/// and then `u = mon_J⁻¹ · dv_B`; so it suffices to try the ordered tuples
/// `J` with `|det mon_J| = |det dv_B|` and read `S` off `mon · u`.
fn matching_subsets(dv: &IntMatrix, mon: &IntMatrix) -> Option<Vec<Vec<usize>>> {
    let n = dv.ncols();
    let mut basis: Vec<usize> = Vec::with_capacity(n);
    for i in 0..dv.nrows() {
        let mut t = basis.clone();
        t.push(i);
        if dv.select_rows(&t).rank() == t.len() {
            basis = t;
        }
    }
    if basis.len() < n {
        return None;
    }
    let dv_b = dv.select_rows(&basis);
    let target = dv_b.det().ok()?.magnitude().clone();
    let dv_rows: Vec<&[crate::Integer]> = dv.rows().collect();
    let mut found: Vec<Vec<usize>> = Vec::new();
    for j in (0..mon.nrows()).combinations(n) {
        if mon.select_rows(&j).det().ok()?.magnitude() != &target {
            continue;
        }
        for order in j.iter().copied().permutations(n) {
            let inv = mon.select_rows(&order).rational_inverse().expect("nonzero determinant");
            let mut entries = Vec::with_capacity(n * n);
            for row in &inv {
                for b in 0..n {
                    let v: Rational = (0..n)
                        .fold(Rational::from_integer(int(0)), |acc, k| acc + row[k].clone() * Rational::from_integer(dv_b[(k, b)].clone()));
                    entries.push(v);
                }
            }
            if !entries.iter().all(|v| v.is_integer()) {
                continue;
            }
            let u = IntMatrix::new(n, n, entries.into_iter().map(|v| v.to_integer()).collect()).expect("square");
            let image = mon * &u;
            let mut subset: Vec<usize> = Vec::with_capacity(dv.nrows());
            for row in &dv_rows {
                match (0..image.nrows()).find(|&k| image.row(k) == *row && !subset.contains(&k)) {
                    Some(k) => subset.push(k),
                    None => break,
                }
            }
            if subset.len() == dv.nrows() {
                subset.sort_unstable();
                found.push(subset);
            }
        }
    }
    found.sort();
    found.dedup();
    Some(found)
}

/// Verdict for `Tot(O(a_1) ⊕ ... ⊕ O(a_c))` over `P^1` with generic `W`.
pub fn model_self_dual(degrees: &[i64]) -> BundleVerdict {
    assert!(!degrees.is_empty(), "degrees must be nonempty");
    let x = p1_bundle(degrees);
    let w = generic_sections(degrees);
    let out = search_self_dual(&x, &w);
    let canonical_trivial = degrees.iter().sum::<i64>() == -2;
    let polystable = degrees.iter().all_equal();
    BundleVerdict {
        degrees: degrees.to_vec(),
        canonical_trivial,
        polystable,
        strong_cy: canonical_trivial && polystable,
        matrix_self_dual: out.matrix_witness.is_some(),
        self_dual: out.witness.is_some(),
        witness: out.witness,
        obstruction: out.obstruction,
    }
}

/// Nonincreasing tuples of length `1..=max_rank` in `[-bound, bound]` with
/// sum `-2`, sorted by length then lexicographically.
pub fn cy_degree_tuples(max_rank: usize, degree_bound: i64) -> Vec<Vec<i64>> {
    fn rec(len: usize, max: i64, bound: i64, sum: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == len {
            if sum == -2 {
                out.push(cur.clone());
            }
            return;
        }
        let left = (len - cur.len()) as i64;
        for a in (-bound..=max).rev() {
            // remaining entries lie in [-bound, a]
            let rest = left - 1;
            if sum + a + rest * a < -2 {
                break;
            }
            if sum + a - rest * bound > -2 {
                continue;
            }
            cur.push(a);
            rec(len, a, bound, sum + a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for len in 1..=max_rank {
        let mut level = Vec::new();
        rec(len, degree_bound, degree_bound, 0, &mut Vec::new(), &mut level);
        level.sort();
        out.extend(level);
    }
    out
}

/// Verdicts for every tuple of [`cy_degree_tuples`], computed in parallel.
pub fn classify_cy(max_rank: usize, degree_bound: i64) -> Vec<BundleVerdict> {
    assert!(max_rank >= 1, "max_rank must be at least 1");
    let tuples = cy_degree_tuples(max_rank, degree_bound);
    let mut out: Vec<BundleVerdict> = tuples.par_iter().map(|d| model_self_dual(d)).collect();
    out.sort_by(|a, b| (a.degrees.len(), &a.degrees).cmp(&(b.degrees.len(), &b.degrees)));
    out
}

/// `O(-k)` for `k = 0..=k_max`.
pub fn sweep_rank1(k_max: i64) -> Vec<BundleVerdict> {
    (0..=k_max).collect::<Vec<_>>().par_iter().map(|&k| model_self_dual(&[-k])).collect()
}

/// `O(k) ⊕ O(-k-2)` for `k = -1..=k_max`.
pub fn sweep_rank2(k_max: i64) -> Vec<BundleVerdict> {
    (-1..=k_max).collect::<Vec<_>>().par_iter().map(|&k| model_self_dual(&[k, -k - 2])).collect()
}

/// Witness that `X × X^∨` is self-dual: the two blocks trade places.
///
/// The subset consists of the monomials of `W` that survive as divisors of
/// `X^∨`, followed by every monomial of `W^∨` (the rows of `dv(X)`).
pub fn product_self_dual(m: &LgModel) -> Result<SelfDualityWitness, Error> {
    let d = m.default_linear_data();
    let report = is_kopaseptic(&d.swapped());
    if let Some(f) = report.first_failure() {
        return Err(Error::NotKopaseptic(f));
    }
    let k_map = report.k_map.expect("present when kopaseptic");
    let dual = dualize(&d)?;
    let sum = sum_models(m, &dual);
    let n = m.variety.rank;
    let r = m.variety.divisor_count();
    let s = m.potential.len();
    let kept: Vec<usize> = (0..s).filter(|&i| k_map[i].is_some()).collect();
    let r_dual = kept.len();

    let mut monomial_subset = kept.clone();
    monomial_subset.extend(s..s + r);
    // dv(X) row i sits at subset position r_dual + i, dv(X^∨) row j at j
    let mut row_permutation: Vec<usize> = (0..r).map(|i| r_dual + i).collect();
    row_permutation.extend(0..r_dual);
    let mut u = IntMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        u[(i, n + i)] = One::one();
        u[(n + i, i)] = One::one();
    }
    let witness = SelfDualityWitness { monomial_subset, row_permutation, basis_change: u, k_lift: sum.k_class.clone() };
    let dv = &sum.variety.dv;
    let mon = sum.mon_matrix();
    assert!(witness.verify_matrices(dv, &mon), "block swap must map the blocks onto each other");
    let sub = mon.select_rows(&witness.monomial_subset);
    assert!(matrix_self_dual(dv, &sub)?.is_some(), "the search must find a witness whenever the block swap exists");
    Ok(witness)
}
