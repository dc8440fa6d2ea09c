//! Command-line frontend: model files, reports, sweeps and SVG output.

pub mod model_file;
pub mod numbers;
pub mod report;
pub mod svg;
pub mod sweep;

use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand};
use lgdual::lg::{dual_linear_data, dualize_labeled};
use lgdual::selfdual::{matrix_self_dual, model_self_dual, search_self_dual};
use lgdual::Error;

use model_file::{load_model, write_model, FileError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_KOPASEPTIC: i32 = 4;
/// A sweep table that disagrees with the expected classification.
pub const EXIT_MISMATCH: i32 = 1;

#[derive(Parser, Debug)]
#[command(name = "lgdual", version, about = "Toric Landau-Ginzburg models and their duals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print dv, mon, the Chow group, the order table and the kopaseptic report.
    Analyze { path: PathBuf },
    /// Write the dual model to standard output.
    Dualize {
        path: PathBuf,
        /// Dualize the result again and report whether the input comes back.
        #[arg(long)]
        check_involution: bool,
    },
    /// Decide self-duality of a model file or of a bundle over P^1.
    #[command(group(ArgGroup::new("input").required(true).args(["path", "degrees"])))]
    Selfdual {
        path: Option<PathBuf>,
        /// Bundle degrees, e.g. `-1,-1`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1..)]
        degrees: Option<Vec<i64>>,
    },
    /// Tabulate self-duality over a family of bundles.
    #[command(group(ArgGroup::new("family").required(true).args(["rank1", "rank2", "cy"])))]
    Sweep {
        /// O(-k) for 0 <= k <= KMAX.
        #[arg(long, value_name = "KMAX")]
        rank1: Option<i64>,
        /// O(k) + O(-k-2) for -1 <= k <= KMAX.
        #[arg(long, value_name = "KMAX")]
        rank2: Option<i64>,
        /// Sum -2 tuples up to MAX_RANK entries in [-BOUND, BOUND].
        #[arg(long, num_args = 2, value_names = ["MAX_RANK", "BOUND"])]
        cy: Option<Vec<i64>>,
    },
    /// Render the moment polygon of a rank-2 model.
    Polytope {
        path: PathBuf,
        /// Output file; standard output when absent.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Height at which unbounded edges are cut.
        #[arg(long, default_value = "1")]
        truncate: String,
    },
}

fn file_error(e: &FileError, err: &mut dyn Write) -> i32 {
    let _ = writeln!(err, "error: {e}");
    e.exit_code()
}

fn core_error(e: &Error, err: &mut dyn Write) -> i32 {
    let _ = writeln!(err, "error: {e}");
    match e {
        Error::NotKopaseptic(_) => EXIT_KOPASEPTIC,
        _ => EXIT_VALIDATION,
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match cli.command {
        Command::Analyze { path } => analyze(&path, out, err),
        Command::Dualize { path, check_involution } => dualize(&path, check_involution, out, err),
        Command::Selfdual { path, degrees } => selfdual(path, degrees, out, err),
        Command::Sweep { rank1, rank2, cy } => {
            let family = match (rank1, rank2, cy) {
                (Some(k), _, _) => sweep::Family::Rank1(k),
                (_, Some(k), _) => sweep::Family::Rank2(k),
                (_, _, Some(v)) => sweep::Family::CalabiYau(v[0].max(0) as usize, v[1]),
                _ => unreachable!("clap requires one family"),
            };
            sweep_cmd(family, out, err)
        }
        Command::Polytope { path, svg, truncate } => polytope(&path, svg, &truncate, out, err),
    }
}

fn analyze(path: &std::path::Path, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let input = match load_model(path) {
        Ok(m) => m,
        Err(e) => return file_error(&e, err),
    };
    let (text, regular) = report::analyze(&input);
    let _ = out.write_all(text.as_bytes());
    if regular {
        EXIT_OK
    } else {
        let _ = writeln!(err, "error: superpotential is not regular on the variety");
        EXIT_VALIDATION
    }
}

fn dualize(path: &std::path::Path, check: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let input = match load_model(path) {
        Ok(m) => m,
        Err(e) => return file_error(&e, err),
    };
    let d = match input.linear_data() {
        Ok(d) => d,
        Err(e) => return core_error(&e, err),
    };
    let labels = input.potential.labels();
    let dual = match dualize_labeled(&d, &labels) {
        Ok(m) => m,
        Err(e) => return core_error(&e, err),
    };
    let _ = out.write_all(write_model(&dual, &input.k).as_bytes());
    let iso = dual.variety.divisor_count() == input.variety.divisor_count()
        && matches!(matrix_self_dual(&input.variety.dv, &dual.variety.dv), Ok(Some(_)));
    let _ = writeln!(out, "# dual variety isomorphic to the input: {}", if iso { "yes (self-dual)" } else { "no" });
    if check {
        let again = match dual_linear_data(&d) {
            Ok(x) => x,
            Err(e) => return core_error(&e, err),
        };
        let back = match dualize_labeled(&again, &input.variety.divisors) {
            Ok(m) => m,
            Err(e) => return core_error(&e, err),
        };
        let same_x = back.variety.dv == input.variety.dv;
        let same_k = back.k_class.group() == input.k.group() && back.k_class.equivalent(&input.k).unwrap_or(false);
        let kept = back.potential.len();
        let _ = writeln!(out, "# involution: dv {}", if same_x { "recovered" } else { "changed" });
        let _ = writeln!(out, "# involution: K {}", if same_k { "equivalent" } else { "not equivalent" });
        let _ = writeln!(out, "# involution: {kept} of {} monomials kept", input.potential.len());
    }
    EXIT_OK
}

fn selfdual(path: Option<PathBuf>, degrees: Option<Vec<i64>>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if let Some(d) = degrees {
        if d.is_empty() {
            let _ = writeln!(err, "error: --degrees needs at least one entry");
            return EXIT_VALIDATION;
        }
        let v = model_self_dual(&d);
        let x = lgdual::toric::p1_bundle(&d);
        let w = lgdual::lg::generic_sections(&d);
        let outcome = search_self_dual(&x, &w);
        let _ = out.write_all(report::verdict_flags(&v).as_bytes());
        let _ = out.write_all(report::self_dual_report(&outcome, &w.labels()).as_bytes());
        return EXIT_OK;
    }
    let path = path.expect("clap requires a path or degrees");
    let input = match load_model(&path) {
        Ok(m) => m,
        Err(e) => return file_error(&e, err),
    };
    if let Some(d) = &input.degrees {
        let _ = out.write_all(report::verdict_flags(&model_self_dual(d)).as_bytes());
    }
    let outcome = search_self_dual(&input.variety, &input.potential);
    let _ = out.write_all(report::self_dual_report(&outcome, &input.potential.labels()).as_bytes());
    EXIT_OK
}

fn sweep_cmd(family: sweep::Family, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let bad = match family {
        sweep::Family::Rank1(k) | sweep::Family::Rank2(k) => k < 1,
        sweep::Family::CalabiYau(r, b) => r < 1 || b < 1,
    };
    if bad {
        let _ = writeln!(err, "error: sweep bounds must be at least 1");
        return EXIT_VALIDATION;
    }
    let vs = sweep::verdicts(family);
    let _ = out.write_all(sweep::table(&vs).as_bytes());
    if sweep::matches_classification(family, &vs) {
        EXIT_OK
    } else {
        let _ = writeln!(err, "table disagrees with the expected classification");
        EXIT_MISMATCH
    }
}

fn polytope(path: &std::path::Path, target: Option<PathBuf>, truncate: &str, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let input = match load_model(path) {
        Ok(m) => m,
        Err(e) => return file_error(&e, err),
    };
    let h = match numbers::parse_rational(truncate) {
        Ok(h) if h > num_traits::Zero::zero() => h,
        _ => {
            let _ = writeln!(err, "error: --truncate must be a positive number");
            return EXIT_VALIDATION;
        }
    };
    let drawing = match svg::polygon(&input, &h) {
        Ok(d) => d,
        Err(svg::SvgError::Core(e)) => return core_error(&e, err),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_VALIDATION;
        }
    };
    let text = svg::render(&drawing);
    match target {
        Some(p) => {
            if let Err(e) = std::fs::write(&p, text) {
                let _ = writeln!(err, "error: cannot write {}: {e}", p.display());
                return EXIT_VALIDATION;
            }
        }
        None => {
            let _ = out.write_all(text.as_bytes());
        }
    }
    EXIT_OK
}
