use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn lgdual(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lgdual")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn corpus() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../models");
    let mut files: Vec<PathBuf> =
        fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).filter(|p| p.extension().is_some_and(|e| e == "toml")).collect();
    files.sort();
    assert!(files.len() >= 5);
    files
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn dual_files_reanalyze() {
    let dir = tempfile::tempdir().unwrap();
    for f in corpus() {
        let out = lgdual(&["dualize", f.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{f:?}: {}", String::from_utf8_lossy(&out.stderr));
        let dual = write(&dir, "dual.toml", &stdout(&out));
        let again = lgdual(&["analyze", &dual]);
        assert_eq!(again.status.code(), Some(0), "{f:?}: dual does not re-analyze");
        assert!(stdout(&again).contains("regularity: ok"));
    }
}

#[test]
fn involution_holds_on_the_corpus() {
    for f in corpus() {
        let out = lgdual(&["dualize", "--check-involution", f.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        let text = stdout(&out);
        assert!(text.contains("# involution: dv recovered"), "{f:?}:\n{text}");
        assert!(text.contains("# involution: K equivalent"), "{f:?}:\n{text}");
    }
}

#[test]
fn conifold_dual_is_reported_self_dual() {
    let f = corpus().into_iter().find(|p| p.ends_with("conifold.toml")).unwrap();
    let out = stdout(&lgdual(&["dualize", f.to_str().unwrap()]));
    assert!(out.contains("yes (self-dual)"), "{out}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let parse = write(&dir, "parse.toml", "[variety]\ndegrees = [-2\n");
    let o = lgdual(&["analyze", &parse]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));

    assert_eq!(lgdual(&["analyze", "/nonexistent/model.toml"]).status.code(), Some(2));

    let irregular = write(
        &dir,
        "irr.toml",
        "[variety]\ndv = [[1,0],[-1,2],[0,1]]\n[potential]\nmonomials = [[1,0],[0,1]]\ncoefficients = [\"1\", \"1\"]\n",
    );
    let o = lgdual(&["analyze", &irregular]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("negative order -1 of t1 along D2"), "{}", stdout(&o));

    let unknown = write(&dir, "unknown.toml", "[variety]\ndegrees = [-2]\ncolour = 1\n");
    assert_eq!(lgdual(&["analyze", &unknown]).status.code(), Some(2));

    // t1^2t2^2 is a facet of the dual polyhedron but not primitive
    let non_primitive = write(
        &dir,
        "np.toml",
        "[variety]\ndv = [[1,0],[-1,2],[0,1]]\n[potential]\nmonomials = [[0,1],[2,2]]\ncoefficients = [\"1\", \"1\"]\n",
    );
    let o = lgdual(&["dualize", &non_primitive]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no generator-to-generator-or-zero map"));

    let w = write(&dir, "w.toml", "[variety]\ndegrees = [-1, -1]\n");
    let o = lgdual(&["polytope", &w, "--svg", &dir.path().join("w.svg").to_string_lossy()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn selfdual_verdicts() {
    for (d, yes) in [("-2", true), ("-1,-1", true), ("-3", false), ("-2,0", true), ("-3,1", false), ("0", false)] {
        let o = lgdual(&["selfdual", "--degrees", d]);
        assert_eq!(o.status.code(), Some(0));
        let text = stdout(&o);
        let verdict = text.lines().nth(1).unwrap();
        assert_eq!(verdict == "YES", yes, "{d}: {text}");
        assert_eq!(verdict.starts_with("NO:"), !yes, "{d}: {text}");
    }
    let o = stdout(&lgdual(&["selfdual", "--degrees", "-3,1"]));
    assert!(o.contains("NO: mon has rank 2, dv has rank 3"), "{o}");
}

#[test]
fn sweeps_are_deterministic() {
    for args in [vec!["sweep", "--rank1", "6"], vec!["sweep", "--rank2", "5"], vec!["sweep", "--cy", "3", "4"]] {
        let a = lgdual(&args);
        let b = lgdual(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
        let text = stdout(&a);
        assert!(text.starts_with("degrees\tsumDeg\tcanonicalTrivial\tpolystable\tstrongCY\tselfDual\n"));
    }
}

#[test]
fn rank_one_sweep_table() {
    let text = stdout(&lgdual(&["sweep", "--rank1", "6"]));
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows.len(), 7);
    for r in &rows {
        assert_eq!(r.len(), 6);
        assert_eq!(r[5] == "true", r[0] == "(-2)", "{r:?}");
    }
}

#[test]
fn svg_counts() {
    let dir = tempfile::tempdir().unwrap();
    for (degree, vertices, points) in [("-2", 2, 4), ("-1", 2, 4), ("0", 2, 4)] {
        let m = write(&dir, "m.toml", &format!("[variety]\ndegrees = [{degree}]\n"));
        let svg = dir.path().join("m.svg");
        let o = lgdual(&["polytope", &m, "--svg", &svg.to_string_lossy()]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let text = fs::read_to_string(&svg).unwrap();
        assert!(text.contains(r#"version="1.1""#));
        let poly = text.lines().find(|l| l.contains("<polygon")).unwrap();
        let listed = poly.split("points=\"").nth(1).unwrap().split('"').next().unwrap();
        assert_eq!(listed.split_whitespace().count(), points);
        assert_eq!(text.matches("class=\"vertex\"").count(), vertices);
        assert_eq!(text.matches("class=\"facet\"").count(), 3);
    }
}

#[test]
fn svg_labels_name_the_divisors() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(&dir, "m.toml", "[variety]\ndegrees = [-2]\n");
    let svg = dir.path().join("m.svg");
    lgdual(&["polytope", &m, "--svg", &svg.to_string_lossy(), "--truncate", "2"]);
    let text = fs::read_to_string(&svg).unwrap();
    for l in ["ℓ", "f₀", "f∞"] {
        assert!(text.contains(l), "missing {l}");
    }
}
