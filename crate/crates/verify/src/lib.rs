//! Acceptance criteria for the workspace, each an exact check returning a
//! one-line summary. `tests/acceptance.rs` runs them all.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use clap::Parser;

use lgdual::lg::{dualize, generic_sections, order_matrix, sum_models, ChowClass, LgModel};
use lgdual::selfdual::{classify_cy, model_self_dual, product_self_dual, sweep_rank1, sweep_rank2, BundleVerdict};
use lgdual::toric::{p1_bundle, projective_line, split_bundle_total_space};
use lgdual::{BundleSpec, HalfspaceSystem, IntMatrix, Integer, Rational};
use support::{det, mul, Rows};

pub type Check = Result<String, String>;

fn ensure(ok: bool, detail: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(detail.into())
    }
}

fn rows_of(m: &IntMatrix) -> Rows {
    m.rows().map(|r| r.iter().map(|v| i64::try_from(v).expect("small entries")).collect()).collect()
}

struct Table {
    rows: Vec<Vec<String>>,
    elapsed: Duration,
    exit: Option<i32>,
}

/// Runs `lgdual sweep <args>` through the command-line entry point.
fn sweep(args: &[&str]) -> Result<Table, String> {
    let cli = lgdual_cli::Cli::try_parse_from(["lgdual", "sweep"].iter().chain(args)).map_err(|e| e.to_string())?;
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let start = Instant::now();
    let code = lgdual_cli::run(cli, &mut out, &mut err);
    let elapsed = start.elapsed();
    let text = String::from_utf8(out).map_err(|e| e.to_string())?;
    let mut lines = text.lines();
    ensure(lines.next() == Some("degrees\tsumDeg\tcanonicalTrivial\tpolystable\tstrongCY\tselfDual"), "missing table header")?;
    let rows = lines.map(|l| l.split('\t').map(str::to_string).collect()).collect();
    Ok(Table { rows, elapsed, exit: Some(code) })
}

fn sweep_check(args: &[&str], limit: Duration, expected_rows: usize, flagged: impl Fn(&[String]) -> bool, want: &[&str]) -> Check {
    let t = sweep(args)?;
    ensure(t.exit == Some(0), format!("exit code {:?}", t.exit))?;
    ensure(t.rows.len() == expected_rows, format!("{} rows, expected {expected_rows}", t.rows.len()))?;
    let hits: Vec<&str> = t.rows.iter().filter(|r| flagged(r)).map(|r| r[0].as_str()).collect();
    ensure(hits == want, format!("flagged {hits:?}, expected {want:?}"))?;
    ensure(t.elapsed < limit, format!("took {:.2?}, limit {limit:?}", t.elapsed))?;
    Ok(format!("flagged {} of {} rows in {:.2?}", hits.join(" "), t.rows.len(), t.elapsed))
}

fn rank_one_sweep() -> Check {
    sweep_check(&["--rank1", "10"], Duration::from_secs(5), 11, |r| r[5] == "true", &["(-2)"])
}

fn rank_two_sweep() -> Check {
    sweep_check(&["--rank2", "8"], Duration::from_secs(30), 10, |r| r[5] == "true", &["(-1,-1)", "(0,-2)"])
}

fn calabi_yau_sweep() -> Check {
    let expected = lgdual::selfdual::cy_degree_tuples(5, 6).len();
    sweep_check(&["--cy", "5", "6"], Duration::from_secs(120), expected, |r| r[4] == "true" && r[5] == "true", &["(-2)", "(-1,-1)"])
}

fn matrix_level_only() -> Check {
    for d in [vec![-2, 0], vec![-1, -1, 0], vec![-2, 0, 0]] {
        let v = model_self_dual(&d);
        ensure(v.matrix_self_dual && !v.strong_cy, format!("{d:?}: matrix self-dual {}, strong CY {}", v.matrix_self_dual, v.strong_cy))?;
    }
    let v = model_self_dual(&[-3, 1]);
    ensure(!v.polystable && !v.self_dual && !v.matrix_self_dual, format!("(-3,1): {v:?}"))?;
    Ok("(-2,0), (-1,-1,0), (-2,0,0) matrix-level only; (-3,1) neither".into())
}

fn all_sweep_verdicts() -> Vec<BundleVerdict> {
    let mut all = sweep_rank1(10);
    all.extend(sweep_rank2(8));
    all.extend(classify_cy(5, 6));
    all
}

fn witness_replay() -> Check {
    let mut replayed = 0;
    for v in all_sweep_verdicts().iter().filter(|v| v.self_dual) {
        let w = v.witness.as_ref().ok_or(format!("{:?}: YES without witness", v.degrees))?;
        let dv = rows_of(&p1_bundle(&v.degrees).dv);
        let mon = rows_of(&generic_sections(&v.degrees).mon_matrix());
        let picked: Rows = w.row_permutation.iter().map(|&p| mon[w.monomial_subset[p]].clone()).collect();
        let u = rows_of(&w.basis_change);
        ensure(mul(&picked, &u) == dv, format!("{:?}: P·mon_S·U ≠ dv", v.degrees))?;
        ensure(det(&u).abs() == 1, format!("{:?}: |det U| = {}", v.degrees, det(&u).abs()))?;
        replayed += 1;
    }
    ensure(replayed >= 4, format!("only {replayed} witnesses"))?;
    Ok(format!("{replayed} witnesses replayed"))
}

fn show(m: &IntMatrix) -> String {
    let rows: Vec<String> = m.rows().map(|r| format!("({})", r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))).collect();
    rows.join(" ")
}

fn constructor_matrices() -> Check {
    let bundle = |degrees: &[i64]| {
        let mut cols = IntMatrix::zeros(2, degrees.len());
        for (j, &a) in degrees.iter().enumerate() {
            cols[(1, j)] = Integer::from(-a);
        }
        split_bundle_total_space(&BundleSpec { base: projective_line(), divisor_columns: cols }).map(|x| x.dv)
    };
    for k in 0..=8 {
        let got = show(&bundle(&[-k]).map_err(|e| e.to_string())?);
        let want = format!("(1,0) (-1,{k}) (0,1)");
        ensure(got == want, format!("O(-{k}): {got}, expected {want}"))?;
    }
    for k in -1..=8 {
        let got = show(&bundle(&[k, -k - 2]).map_err(|e| e.to_string())?);
        let want = format!("(1,0,0) (-1,{},{}) (0,1,0) (0,0,1)", -k, k + 2);
        ensure(got == want, format!("W_{k}: {got}, expected {want}"))?;
    }
    Ok("O(-k) for 0 ≤ k ≤ 8 and W_k for -1 ≤ k ≤ 8".into())
}

fn chow_groups() -> Check {
    let o2 = p1_bundle(&[-2]).chow_group();
    ensure(o2.free_rank == 1 && o2.torsion.is_empty(), format!("O(-2): {o2:?}"))?;
    let p = show(&o2.free_projection());
    ensure(p == "(1,1,-2)" || p == "(-1,-1,2)", format!("O(-2) projection {p}"))?;
    let w = p1_bundle(&[-1, -1]).chow_group();
    ensure(w.free_rank == 1 && w.torsion.is_empty(), format!("W_-1: {w:?}"))?;
    let p = show(&w.free_projection());
    ensure(p == "(1,1,-1,-1)" || p == "(-1,-1,1,1)", format!("W_-1 projection {p}"))?;
    // the free coordinate vanishes on the image of dv
    let a = p1_bundle(&[-1, -1]).dv;
    let pt = w.free_projection();
    let image = &pt * &a;
    ensure(image.is_zero(), "projection does not kill the image")?;
    Ok("O(-2) → Z by (1,1,-2); W_-1 → Z by (1,1,-1,-1)".into())
}

fn regularity() -> Check {
    let mut models = 0;
    for v in all_sweep_verdicts() {
        let x = p1_bundle(&v.degrees);
        let w = generic_sections(&v.degrees);
        let orders = order_matrix(&x, &w).map_err(|e| e.to_string())?;
        let dv = rows_of(&x.dv);
        let mon = rows_of(&w.mon_matrix());
        for (i, d) in dv.iter().enumerate() {
            for (k, m) in mon.iter().enumerate() {
                let pairing: i64 = d.iter().zip(m).map(|(a, b)| a * b).sum();
                ensure(orders[(i, k)] == Integer::from(pairing), format!("{:?}: entry ({i},{k})", v.degrees))?;
                ensure(pairing >= 0, format!("{:?}: negative order at ({i},{k})", v.degrees))?;
            }
        }
        models += 1;
    }
    Ok(format!("{models} generated models"))
}

fn oracles() -> Check {
    let start = Instant::now();
    let h = support::hermite_suite(101, 1200)?;
    let s = support::smith_suite(102, 1200)?;
    let m = support::self_dual_suite(103, 1200)?;
    let b = support::bundle_subset_suite()?;
    let elapsed = start.elapsed();
    ensure(h.cases >= 1000 && s.cases >= 1000 && m.cases >= 1000, "too few cases")?;
    ensure(elapsed < Duration::from_secs(120), format!("took {elapsed:.2?}"))?;
    Ok(format!(
        "HNF {} / SNF {} / matrixSelfDual {} ({} yes, {} beyond box) + {} bundle subsets, all agree, {elapsed:.2?}",
        h.cases,
        s.cases,
        m.cases,
        m.yes,
        m.beyond_box + h.beyond_box,
        b.cases
    ))
}

fn products() -> Check {
    let samples = [vec![-2], vec![-1, -1], vec![-1], vec![-3], vec![-2, 0]];
    for d in &samples {
        let m = LgModel::with_default_class(p1_bundle(d), generic_sections(d)).map_err(|e| e.to_string())?;
        let w = product_self_dual(&m).map_err(|e| format!("{d:?}: {e}"))?;
        let dual = dualize(&m.default_linear_data()).map_err(|e| e.to_string())?;
        let s = sum_models(&m, &dual);
        ensure(w.verify_matrices(&s.variety.dv, &s.mon_matrix()), format!("{d:?}: block swap does not replay"))?;
    }
    Ok(format!("{} sample models", samples.len()))
}

fn dropped_rows(degrees: &[i64], t: (i64, i64)) -> Result<Vec<usize>, String> {
    let x = p1_bundle(degrees);
    let k = ChowClass::imaginary(x.chow_group(), &[Rational::new(t.0.into(), t.1.into())]).map_err(|e| e.to_string())?;
    let h = HalfspaceSystem::new(x.dv.clone(), k.im_lift()).map_err(|e| e.to_string())?;
    Ok(h.facets().map_err(|e| e.to_string())?.dropped())
}

fn redundancy() -> Check {
    let negative = [(-1, 1), (-2, 1), (-1, 2), (-5, 3)];
    let positive = [(1, 1), (2, 1), (1, 2)];
    let mut problems = Vec::new();
    for (degrees, want) in [(vec![-2], vec![2]), (vec![-1, -1], vec![2, 3])] {
        for &t in &negative {
            let got = dropped_rows(&degrees, t)?;
            if got != want {
                problems.push(format!("{degrees:?} at t = {}/{} drops {got:?}, expected {want:?}", t.0, t.1));
            }
        }
        for &t in &positive {
            let got = dropped_rows(&degrees, t)?;
            if !got.is_empty() {
                problems.push(format!("{degrees:?} at t = {}/{} drops {got:?}, expected none", t.0, t.1));
            }
        }
    }
    if problems.is_empty() {
        Ok("t < 0 drops the stated rows, t > 0 drops none".into())
    } else {
        Err(problems.join("; "))
    }
}

pub type Criterion = (&'static str, fn() -> Check);

pub const CRITERIA: [Criterion; 11] = [
    ("rank-one sweep", rank_one_sweep),
    ("rank-two sweep", rank_two_sweep),
    ("Calabi-Yau sweep", calabi_yau_sweep),
    ("matrix-level self-duality without strong CY", matrix_level_only),
    ("witness replay", witness_replay),
    ("split-bundle matrices", constructor_matrices),
    ("Chow groups", chow_groups),
    ("regularity", regularity),
    ("brute-force oracles", oracles),
    ("products with the dual", products),
    ("redundancy for negative classes", redundancy),
];

/// Runs every criterion, writing one PASS/FAIL line each. Returns the number
/// of failures.
pub fn run_all(out: &mut dyn Write) -> usize {
    let mut failed = 0;
    for (i, (name, check)) in CRITERIA.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let _ = match result {
            Ok(detail) => writeln!(out, "PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                writeln!(out, "FAIL {:>2} {name}: {detail}", i + 1)
            }
        };
    }
    let _ = writeln!(out, "{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    failed
}
