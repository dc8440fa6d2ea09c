//! Plain-text reports.

use std::fmt::Write;

use lgdual::lg::{is_kopaseptic, order_matrix, KopasepticReport};
use lgdual::selfdual::{BundleVerdict, SearchOutcome};
use lgdual::{ChowClass, IntMatrix, LinearData, SelfDualityWitness};
use num_traits::Signed;

use crate::model_file::{format_vector, ModelInput};
use crate::numbers::format_complex;

/// Right-aligned table with row and column headers.
pub fn labelled_matrix(m: &IntMatrix, rows: &[String], cols: Option<&[String]>) -> String {
    let cells: Vec<Vec<String>> = m.rows().map(|r| r.iter().map(|v| v.to_string()).collect()).collect();
    let head_w = rows.iter().map(|s| s.chars().count()).max().unwrap_or(0);
    let mut widths: Vec<usize> = (0..m.ncols()).map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(1)).collect();
    if let Some(c) = cols {
        for (w, h) in widths.iter_mut().zip(c) {
            *w = (*w).max(h.chars().count());
        }
    }
    let mut out = String::new();
    if let Some(c) = cols {
        let _ = write!(out, "  {:head_w$}", "");
        for (h, w) in c.iter().zip(&widths) {
            let _ = write!(out, "  {h:>w$}");
        }
        out.push('\n');
    }
    for (label, r) in rows.iter().zip(&cells) {
        let _ = write!(out, "  {label:<head_w$}");
        for (v, w) in r.iter().zip(&widths) {
            let _ = write!(out, "  {v:>w$}");
        }
        out.push('\n');
    }
    out
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn class_line(k: &ChowClass) -> String {
    let values: Vec<String> = k.class_values().iter().map(format_complex).collect();
    format!("class values [{}], Im lift {}", values.join(", "), format_vector(&k.im_lift()))
}

pub fn kopaseptic_lines(r: &KopasepticReport, rows: &[String]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "  interior nonempty: {}", yes(r.interior_nonempty));
    let _ = writeln!(out, "  k map exists: {}", yes(r.k_map_exists));
    let _ = writeln!(out, "  orders nonnegative: {}", yes(r.orders_nonnegative));
    if let Some(k) = &r.k_map {
        if r.k_map_is_identity() {
            let _ = writeln!(out, "  k map: identity");
        } else {
            let dropped: Vec<&str> = k.iter().enumerate().filter(|(_, f)| f.is_none()).map(|(i, _)| rows[i].as_str()).collect();
            let _ = writeln!(out, "  k map: drops {}", dropped.join(", "));
        }
    }
    match r.first_failure() {
        None => {
            let _ = writeln!(out, "  overall: pass");
        }
        Some(f) => {
            let _ = writeln!(out, "  overall: FAIL ({f})");
        }
    }
    out
}

/// The `analyze` report. The flag is false when `W` is not regular.
pub fn analyze(input: &ModelInput) -> (String, bool) {
    let x = &input.variety;
    let w = &input.potential;
    let mut out = String::new();
    let mon_labels = w.labels();
    if let Some(d) = &input.degrees {
        let _ = writeln!(out, "variety: total space of {} over P^1", bundle_name(d));
    }
    let _ = writeln!(out, "dv ({} divisors, rank {}):", x.divisor_count(), x.rank);
    out.push_str(&labelled_matrix(&x.dv, &x.divisors, None));
    let _ = writeln!(out, "mon ({} monomials):", w.len());
    out.push_str(&labelled_matrix(&w.mon_matrix(), &mon_labels, None));

    let g = x.chow_group();
    let torsion =
        if g.torsion.is_empty() { "none".to_string() } else { g.torsion.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" + ") };
    let _ = writeln!(out, "Chow group: Z^{} (torsion: {torsion})", g.free_rank);
    let fp = g.free_projection();
    for i in 0..fp.nrows() {
        let row: Vec<String> = fp.row(i).iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "  generator functional: ({})", row.join(", "));
    }

    let orders = order_matrix(x, w).expect("ranks checked on load");
    let _ = writeln!(out, "orders dv·monᵀ:");
    out.push_str(&labelled_matrix(&orders, &x.divisors, Some(&mon_labels)));
    let mut regular = true;
    for i in 0..orders.nrows() {
        for j in 0..orders.ncols() {
            if orders[(i, j)].is_negative() {
                regular = false;
                let _ = writeln!(out, "  negative order {} of {} along {}", orders[(i, j)], mon_labels[j], x.divisors[i]);
            }
        }
    }
    let _ = writeln!(out, "regularity: {}", if regular { "ok" } else { "FAILED" });
    let _ = writeln!(out, "K: {}", class_line(&input.k));
    let _ = writeln!(out, "L: {}", class_line(&input.l));
    let d = LinearData { a: x.dv.clone(), k: input.k.clone(), b: w.mon_matrix(), l: input.l.clone() };
    let _ = writeln!(out, "kopaseptic (dv, K):");
    out.push_str(&kopaseptic_lines(&is_kopaseptic(&d), &x.divisors));
    let _ = writeln!(out, "kopaseptic (mon, L):");
    out.push_str(&kopaseptic_lines(&is_kopaseptic(&d.swapped()), &mon_labels));
    (out, regular)
}

pub fn bundle_name(d: &[i64]) -> String {
    d.iter().map(|a| format!("O({a})")).collect::<Vec<_>>().join(" + ")
}

pub fn witness_lines(w: &SelfDualityWitness, mon_labels: &[String]) -> String {
    let mut out = String::new();
    let subset: Vec<&str> = w.monomial_subset.iter().map(|&i| mon_labels[i].as_str()).collect();
    let matched: Vec<&str> = w.row_permutation.iter().map(|&p| subset[p]).collect();
    let _ = writeln!(out, "  monomial subset: {}", subset.join(", "));
    let _ = writeln!(out, "  divisor order: {}", matched.join(", "));
    let perm: Vec<String> = w.row_permutation.iter().map(|p| p.to_string()).collect();
    let _ = writeln!(out, "  permutation: [{}]", perm.join(", "));
    let _ = writeln!(out, "  U: {}", w.basis_change);
    let _ = writeln!(out, "  K: {}", class_line(&w.k_lift));
    out
}

pub fn self_dual_report(outcome: &SearchOutcome, mon_labels: &[String]) -> String {
    let mut out = String::new();
    match (&outcome.witness, &outcome.matrix_witness) {
        (Some(w), _) => {
            out.push_str("YES\n");
            out.push_str(&witness_lines(w, mon_labels));
        }
        (None, Some((subset, perm, u))) => {
            let _ = writeln!(out, "NO: {}", outcome.obstruction.as_deref().unwrap_or("unknown"));
            let names: Vec<&str> = subset.iter().map(|&i| mon_labels[i].as_str()).collect();
            let _ = writeln!(out, "  matrix level: self-dual via {} with permutation {:?} and U = {u}", names.join(", "), perm);
        }
        (None, None) => {
            let _ = writeln!(out, "NO: {}", outcome.obstruction.as_deref().unwrap_or("unknown"));
        }
    }
    out
}

pub fn verdict_flags(v: &BundleVerdict) -> String {
    format!(
        "degrees {}: sum {}, canonical trivial {}, polystable {}, strong CY {}\n",
        format_degrees(&v.degrees),
        v.sum_of_degrees(),
        v.canonical_trivial,
        v.polystable,
        v.strong_cy
    )
}

pub fn format_degrees(d: &[i64]) -> String {
    format!("({})", d.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(","))
}
