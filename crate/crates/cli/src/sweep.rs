//! Classification sweeps as tab-separated tables.

use lgdual::selfdual::{classify_cy, sweep_rank1, sweep_rank2, BundleVerdict};

use crate::report::format_degrees;

pub const HEADER: &str = "degrees\tsumDeg\tcanonicalTrivial\tpolystable\tstrongCY\tselfDual";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `O(-k)`, `0 ≤ k ≤ kmax`.
    Rank1(i64),
    /// `O(k) ⊕ O(-k-2)`, `-1 ≤ k ≤ kmax`.
    Rank2(i64),
    /// Every sum `-2` tuple up to a rank and degree bound.
    CalabiYau(usize, i64),
}

pub fn verdicts(f: Family) -> Vec<BundleVerdict> {
    match f {
        Family::Rank1(k) => sweep_rank1(k),
        Family::Rank2(k) => sweep_rank2(k),
        Family::CalabiYau(r, b) => classify_cy(r, b),
    }
}

pub fn row(v: &BundleVerdict) -> String {
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}",
        format_degrees(&v.degrees),
        v.sum_of_degrees(),
        v.canonical_trivial,
        v.polystable,
        v.strong_cy,
        v.self_dual
    )
}

pub fn table(vs: &[BundleVerdict]) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    for v in vs {
        out.push_str(&row(v));
        out.push('\n');
    }
    out
}

/// Expected self-duality for the family: only `O(-2)` in rank one, only
/// `k ∈ {-1, 0}` for `O(k) ⊕ O(-k-2)`, and among strong CY tuples only `(-2)`
/// and `(-1,-1)`.
pub fn matches_classification(f: Family, vs: &[BundleVerdict]) -> bool {
    vs.iter().all(|v| match f {
        Family::Rank1(_) => v.self_dual == (v.degrees == [-2]),
        Family::Rank2(_) => v.self_dual == (v.degrees[0] == -1 || v.degrees[0] == 0),
        Family::CalabiYau(..) => (v.strong_cy && v.self_dual) == (v.degrees == [-2] || v.degrees == [-1, -1]),
    })
}
