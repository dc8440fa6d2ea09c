//! Bounded brute-force oracles over `i64`, written without the library's
//! elimination routines. Shared by the oracle tests and the acceptance run.

#![allow(dead_code)]

use itertools::Itertools;
use lgdual::linalg::{hnf_col_with_transform, right_equivalent, snf, Matrix};
use lgdual::selfdual::matrix_self_dual;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub type M = Matrix<i64>;
pub type Rows = Vec<Vec<i64>>;

/// Entry bound for the brute-force unimodular matrices.
pub const BOX: i64 = 3;

pub fn random_rows(rng: &mut StdRng, m: usize, n: usize, lo: i64, hi: i64) -> Rows {
    (0..m).map(|_| (0..n).map(|_| rng.gen_range(lo..=hi)).collect()).collect()
}

pub fn to_m(rows: &Rows, n: usize) -> M {
    M::from_rows(n, rows.clone()).unwrap()
}

pub fn mul(a: &Rows, b: &Rows) -> Rows {
    let n = b.first().map_or(0, Vec::len);
    a.iter().map(|r| (0..n).map(|j| r.iter().zip(b).map(|(x, row)| x * row[j]).sum()).collect()).collect()
}

/// Laplace expansion.
pub fn det(a: &Rows) -> i64 {
    match a.len() {
        0 => 1,
        1 => a[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Rows = a[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| *v).collect()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * a[0][j] * det(&minor)
            })
            .sum(),
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn all_vectors(n: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..n).map(|_| -bound..=bound).multi_cartesian_product().collect()
}

pub fn unimodular_2x2(bound: i64) -> Vec<Rows> {
    all_vectors(4, bound).into_iter().map(|v| vec![vec![v[0], v[1]], vec![v[2], v[3]]]).filter(|u| det(u).abs() == 1).collect()
}

pub fn random_unimodular(rng: &mut StdRng, n: usize) -> Rows {
    loop {
        let u = random_rows(rng, n, n, -2, 2);
        if det(&u).abs() == 1 {
            return u;
        }
    }
}

/// Column-style Hermite shape, checked from the definition.
pub fn is_hermite_shape(h: &Rows, n: usize) -> bool {
    let m = h.len();
    let lead = |j: usize| (0..m).find(|&i| h[i][j] != 0);
    let mut last: Option<usize> = None;
    let mut seen_zero = false;
    for j in 0..n {
        match lead(j) {
            None => seen_zero = true,
            Some(p) => {
                if seen_zero || last.is_some_and(|l| p <= l) || h[p][j] <= 0 {
                    return false;
                }
                if (0..j).any(|k| h[p][k] < 0 || h[p][k] >= h[p][j]) {
                    return false;
                }
                last = Some(p);
            }
        }
    }
    true
}

/// Invariant factors from the gcds of `k x k` minors.
pub fn determinantal_factors(a: &Rows, n: usize) -> Vec<i64> {
    let m = a.len();
    let mut d = vec![1i64];
    for k in 1..=m.min(n) {
        let mut g = 0;
        for rows in (0..m).combinations(k) {
            for cols in (0..n).combinations(k) {
                let minor: Rows = rows.iter().map(|&i| cols.iter().map(|&j| a[i][j]).collect()).collect();
                g = gcd(g, det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        d.push(g);
    }
    d.windows(2).map(|w| w[1] / w[0]).collect()
}

/// Some `(p, u)` with `mon[p] · u = dv` and `u` in the box. Column `j` of `u`
/// solves `mon[p] · x = dv[:, j]`, so the columns are enumerated separately.
pub fn brute_self_dual(dv: &Rows, mon: &Rows, n: usize, bound: i64) -> Option<(Vec<usize>, Rows)> {
    let r = dv.len();
    let vectors = all_vectors(n, bound);
    for p in (0..r).permutations(r) {
        let mp: Rows = p.iter().map(|&i| mon[i].clone()).collect();
        let columns: Vec<Vec<&Vec<i64>>> = (0..n)
            .map(|j| {
                vectors.iter().filter(|x| (0..r).all(|i| mp[i].iter().zip(x.iter()).map(|(a, b)| a * b).sum::<i64>() == dv[i][j])).collect()
            })
            .collect();
        if columns.iter().any(Vec::is_empty) {
            continue;
        }
        for choice in columns.iter().map(|c| c.iter()).multi_cartesian_product() {
            let u: Rows = (0..n).map(|i| choice.iter().map(|col| col[i]).collect()).collect();
            if det(&u).abs() == 1 {
                return Some((p, u));
            }
        }
    }
    None
}

/// Counts from one oracle suite. `beyond_box` counts answers the library
/// backs with a witness whose entries leave `[-BOX, BOX]`, which brute force
/// cannot see; they still count as agreement.
#[derive(Debug, Default)]
pub struct Tally {
    pub cases: usize,
    pub yes: usize,
    pub beyond_box: usize,
}

pub fn hermite_case(a: &Rows, units: &[Rows]) -> Result<bool, String> {
    let d = hnf_col_with_transform(&to_m(a, 2));
    let h = d.h.to_rows();
    if !is_hermite_shape(&h, 2) {
        return Err(format!("not in Hermite shape: {a:?} -> {h:?}"));
    }
    if mul(a, &d.transform.to_rows()) != h || det(&d.transform.to_rows()).abs() != 1 {
        return Err(format!("transform does not replay for {a:?}"));
    }
    let found: Vec<Rows> = units.iter().map(|u| mul(a, u)).filter(|b| is_hermite_shape(b, 2)).unique().collect();
    if found.iter().any(|b| *b != h) {
        return Err(format!("second Hermite form in the orbit of {a:?}: {found:?} vs {h:?}"));
    }
    if found.is_empty() {
        if d.transform.max_abs() <= BOX {
            return Err(format!("brute force missed the Hermite form of {a:?}"));
        }
        return Ok(true);
    }
    Ok(false)
}

pub fn hermite_suite(seed: u64, cases: usize) -> Result<Tally, String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let units = unimodular_2x2(BOX);
    let mut t = Tally::default();
    for _ in 0..cases {
        let m = rng.gen_range(1..=3);
        let a = random_rows(&mut rng, m, 2, -3, 3);
        t.beyond_box += hermite_case(&a, &units)? as usize;
        t.cases += 1;
    }
    Ok(t)
}

pub fn smith_case(a: &Rows, n: usize) -> Result<(), String> {
    let m = a.len();
    let s = snf(&to_m(a, n));
    if s.invariant_factors() != determinantal_factors(a, n) {
        return Err(format!("invariant factors of {a:?}: {:?}", s.invariant_factors()));
    }
    if mul(&mul(&s.u.to_rows(), a), &s.v.to_rows()) != s.s.to_rows() {
        return Err(format!("u·a·v ≠ s for {a:?}"));
    }
    if det(&s.u.to_rows()).abs() != 1 || det(&s.v.to_rows()).abs() != 1 {
        return Err(format!("transforms not unimodular for {a:?}"));
    }
    if (0..m).any(|i| (0..n).any(|j| i != j && s.s[(i, j)] != 0)) {
        return Err(format!("s not diagonal for {a:?}"));
    }
    Ok(())
}

pub fn smith_suite(seed: u64, cases: usize) -> Result<Tally, String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut t = Tally::default();
    for _ in 0..cases {
        let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        smith_case(&random_rows(&mut rng, m, n, -6, 6), n)?;
        t.cases += 1;
    }
    Ok(t)
}

/// One comparison. `Ok(Some(beyond_box))` on a yes, `Ok(None)` on a no.
pub fn self_dual_case(dv: &Rows, mon: &Rows, n: usize) -> Result<Option<bool>, String> {
    let lib = matrix_self_dual(&to_m(dv, n), &to_m(mon, n)).map_err(|e| e.to_string())?;
    let brute = brute_self_dual(dv, mon, n, BOX);
    match (lib, brute) {
        (Some((p, u)), brute) => {
            let mp: Rows = p.iter().map(|&i| mon[i].clone()).collect();
            let u = u.to_rows();
            if mul(&mp, &u) != *dv || det(&u).abs() != 1 {
                return Err(format!("witness does not replay for {dv:?} / {mon:?}"));
            }
            let outside = u.iter().flatten().any(|v| v.abs() > BOX);
            if brute.is_none() && !outside {
                return Err(format!("brute force missed an in-box witness for {dv:?} / {mon:?}"));
            }
            Ok(Some(brute.is_none()))
        }
        (None, Some(w)) => Err(format!("search missed {w:?} for dv {dv:?}, mon {mon:?}")),
        (None, None) => Ok(None),
    }
}

pub fn self_dual_suite(seed: u64, cases: usize) -> Result<Tally, String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let shapes = [(2usize, 2usize), (3, 2), (4, 2), (3, 3), (4, 3)];
    let mut t = Tally::default();
    for _ in 0..cases {
        let (r, n) = shapes[rng.gen_range(0..shapes.len())];
        let mon = random_rows(&mut rng, r, n, -2, 2);
        let dv = if rng.gen_bool(0.5) {
            let mut p: Vec<usize> = (0..r).collect();
            for i in (1..r).rev() {
                p.swap(i, rng.gen_range(0..=i));
            }
            let mp: Rows = p.iter().map(|&i| mon[i].clone()).collect();
            mul(&mp, &random_unimodular(&mut rng, n))
        } else {
            random_rows(&mut rng, r, n, -2, 2)
        };
        if let Some(outside) = self_dual_case(&dv, &mon, n)? {
            t.yes += 1;
            t.beyond_box += outside as usize;
        }
        t.cases += 1;
    }
    Ok(t)
}

pub fn right_equivalence_suite(seed: u64, cases: usize) -> Result<Tally, String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let units = unimodular_2x2(BOX);
    let mut t = Tally::default();
    for _ in 0..cases {
        let m = rng.gen_range(1..=3);
        let b = random_rows(&mut rng, m, 2, -3, 3);
        let a = if rng.gen_bool(0.5) { mul(&b, &random_unimodular(&mut rng, 2)) } else { random_rows(&mut rng, m, 2, -3, 3) };
        let brute = units.iter().any(|u| mul(&b, u) == a);
        match right_equivalent(&to_m(&a, 2), &to_m(&b, 2)) {
            Some(u) => {
                if mul(&b, &u.to_rows()) != a {
                    return Err(format!("witness does not replay for {a:?} ~ {b:?}"));
                }
                if !brute && u.max_abs() <= BOX {
                    return Err(format!("brute force missed {a:?} ~ {b:?}"));
                }
                t.yes += 1;
                t.beyond_box += !brute as usize;
            }
            None if brute => return Err(format!("missed equivalence {a:?} ~ {b:?}")),
            None => {}
        }
        t.cases += 1;
    }
    Ok(t)
}

/// dv and the generic sections of a bundle over `P^1`, as machine integers.
pub fn bundle(degrees: &[i64]) -> (Rows, Rows) {
    let x = lgdual::toric::p1_bundle(degrees);
    let w = lgdual::lg::generic_sections(degrees);
    let conv = |m: &lgdual::IntMatrix| -> Rows { m.rows().map(|r| r.iter().map(|v| i64::try_from(v).unwrap()).collect()).collect() };
    (conv(&x.dv), conv(&w.mon_matrix()))
}

/// Every monomial subset of the rank-one bundles `O(-k)`, `k ≤ 6`, and of
/// `O(k) ⊕ O(-k-2)`, `-1 ≤ k ≤ 4`.
pub fn bundle_subset_suite() -> Result<Tally, String> {
    let mut families: Vec<Vec<i64>> = (0..=6).map(|k| vec![-k]).collect();
    families.extend((-1..=4).map(|k| vec![k, -k - 2]));
    let mut t = Tally::default();
    for degrees in families {
        let (dv, mon) = bundle(&degrees);
        let n = dv[0].len();
        for subset in (0..mon.len()).combinations(dv.len()) {
            let sub: Rows = subset.iter().map(|&i| mon[i].clone()).collect();
            if let Some(outside) = self_dual_case(&dv, &sub, n)? {
                t.yes += 1;
                t.beyond_box += outside as usize;
            }
            t.cases += 1;
        }
    }
    Ok(t)
}
