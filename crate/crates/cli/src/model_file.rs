//! Model files: TOML with `[variety]`, `[potential]` and `[kahler]` tables.
//!
//! ```toml
//! [variety]
//! degrees = [-2]            # or: dv = [[1, 0], [-1, 2], [0, 1]], labels = [...]
//!
//! [potential]               # optional for `degrees`; generic sections otherwise
//! monomials = [[0, 1], [1, 1], [2, 1]]
//! coefficients = [1, "1+2i", 0.5]
//!
//! [kahler]
//! k = ["i"]                 # one value per free Chow coordinate, default i
//! l = ["i"]                 # same for coker(mon)
//! ```
//!
//! Instead of `k`, `[variety]` may give `offset`, a rational vector with one
//! entry per divisor; `K` is then `i · offset`.

use std::ops::Range;
use std::path::Path;

use lgdual::lg::{generic_sections, Superpotential};
use lgdual::linalg::cokernel;
use lgdual::toric::p1_bundle;
use lgdual::{ChowClass, ComplexRational, Error, IntMatrix, Integer, LgModel, LinearData, Rational, ToricData};
use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use toml::Spanned;

use crate::numbers::{format_complex, format_complex_f64, format_rational, parse_complex, to_complex64};

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("{path}: cannot read: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{}{message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Validation { line: Option<usize>, message: String },
}

impl FileError {
    pub fn exit_code(&self) -> i32 {
        match self {
            FileError::Io { .. } | FileError::Parse { .. } => 2,
            FileError::Validation { .. } => 3,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    variety: RawVariety,
    potential: Option<RawPotential>,
    kahler: Option<RawKahler>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVariety {
    degrees: Option<Spanned<Vec<i64>>>,
    dv: Option<Spanned<Vec<Vec<i64>>>>,
    labels: Option<Spanned<Vec<String>>>,
    offset: Option<Spanned<Vec<Number>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPotential {
    monomials: Option<Spanned<Vec<Vec<i64>>>>,
    coefficients: Option<Spanned<Vec<Number>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawKahler {
    k: Option<Spanned<Vec<Number>>>,
    l: Option<Spanned<Vec<Number>>>,
}

#[derive(Deserialize, Clone, Debug)]
#[serde(untagged)]
enum Number {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Number {
    fn exact(&self) -> Result<ComplexRational, String> {
        match self {
            Number::Int(v) => Ok(ComplexRational::new(Rational::from_integer((*v).into()), Rational::zero())),
            Number::Float(v) => parse_complex(&format!("{v}")),
            Number::Text(s) => parse_complex(s),
        }
    }

    fn float(&self) -> Result<Complex64, String> {
        match self {
            Number::Int(v) => Ok(Complex64::new(*v as f64, 0.0)),
            Number::Float(v) => Ok(Complex64::new(*v, 0.0)),
            Number::Text(s) => parse_complex(s).map(|z| to_complex64(&z)),
        }
    }
}

/// A parsed model file.
#[derive(Clone, Debug)]
pub struct ModelInput {
    /// Set when the variety was given by bundle degrees over `P^1`.
    pub degrees: Option<Vec<i64>>,
    pub variety: ToricData,
    pub potential: Superpotential,
    pub k: ChowClass,
    pub l: ChowClass,
}

impl ModelInput {
    pub fn model(&self) -> Result<LgModel, Error> {
        LgModel::new(self.variety.clone(), self.potential.clone(), self.k.clone())
    }

    pub fn linear_data(&self) -> Result<LinearData, Error> {
        self.model()?.linear_data(self.l.clone())
    }
}

struct Lines<'a> {
    text: &'a str,
}

impl Lines<'_> {
    fn line(&self, span: Range<usize>) -> usize {
        self.text[..span.start.min(self.text.len())].matches('\n').count() + 1
    }

    fn invalid<T>(&self, span: Range<usize>, message: impl Into<String>) -> Result<T, FileError> {
        Err(FileError::Validation { line: Some(self.line(span)), message: message.into() })
    }
}

fn matrix(rows: &[Vec<i64>], width: usize) -> Result<IntMatrix, String> {
    let rows: Vec<Vec<Integer>> = rows.iter().map(|r| r.iter().map(|&v| v.into()).collect()).collect();
    IntMatrix::from_rows(width, rows).map_err(|e| e.to_string())
}

fn exact_values(lines: &Lines, v: &Spanned<Vec<Number>>) -> Result<Vec<ComplexRational>, FileError> {
    v.get_ref().iter().map(|n| n.exact()).collect::<Result<_, _>>().or_else(|e| lines.invalid(v.span(), e))
}

pub fn parse_model(text: &str) -> Result<ModelInput, FileError> {
    let raw: RawFile = toml::from_str(text).map_err(|e| {
        let line = e.span().map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1).unwrap_or(1);
        FileError::Parse { line, message: e.message().to_string() }
    })?;
    let lines = Lines { text };
    let v = &raw.variety;

    let (variety, degrees) = match (&v.degrees, &v.dv) {
        (Some(_), Some(dv)) => return lines.invalid(dv.span(), "give either `degrees` or `dv`, not both"),
        (None, None) => return Err(FileError::Validation { line: None, message: "[variety] needs `degrees` or `dv`".into() }),
        (Some(d), None) => {
            if d.get_ref().is_empty() {
                return lines.invalid(d.span(), "`degrees` must be nonempty");
            }
            if v.labels.is_some() {
                return lines.invalid(d.span(), "`labels` only apply to an explicit `dv`");
            }
            (p1_bundle(d.get_ref()), Some(d.get_ref().clone()))
        }
        (None, Some(dv)) => {
            let width = dv.get_ref().first().map_or(0, Vec::len);
            let m = matrix(dv.get_ref(), width).or_else(|e| lines.invalid(dv.span(), e))?;
            let labels = match &v.labels {
                Some(l) => l.get_ref().clone(),
                None => (1..=m.nrows()).map(|i| format!("D{i}")).collect(),
            };
            let x =
                ToricData::new(labels, m).or_else(|e| lines.invalid(v.labels.as_ref().map_or(dv.span(), |l| l.span()), e.to_string()))?;
            if !x.rows_primitive() {
                return lines.invalid(dv.span(), "every dv row must be primitive");
            }
            (x, None)
        }
    };

    let pot = raw.potential.as_ref();
    let potential = match (pot.and_then(|p| p.monomials.as_ref()), &degrees) {
        (Some(mon), _) => {
            let m = matrix(mon.get_ref(), variety.rank).or_else(|e| lines.invalid(mon.span(), e))?;
            let coefficients = match pot.and_then(|p| p.coefficients.as_ref()) {
                Some(c) => {
                    let c2: Vec<Complex64> =
                        c.get_ref().iter().map(Number::float).collect::<Result<_, _>>().or_else(|e| lines.invalid(c.span(), e))?;
                    if c2.len() != m.nrows() {
                        return lines.invalid(c.span(), format!("{} coefficients for {} monomials", c2.len(), m.nrows()));
                    }
                    c2
                }
                None => vec![Complex64::new(1.0, 0.0); m.nrows()],
            };
            Superpotential::from_mon(&m, &coefficients).or_else(|e| lines.invalid(mon.span(), e.to_string()))?
        }
        (None, Some(d)) => {
            let w = generic_sections(d);
            match pot.and_then(|p| p.coefficients.as_ref()) {
                Some(c) => {
                    let c2: Vec<Complex64> =
                        c.get_ref().iter().map(Number::float).collect::<Result<_, _>>().or_else(|e| lines.invalid(c.span(), e))?;
                    if c2.len() != w.len() {
                        return lines.invalid(c.span(), format!("{} coefficients for {} generic monomials", c2.len(), w.len()));
                    }
                    Superpotential::from_mon(&w.mon_matrix(), &c2).or_else(|e| lines.invalid(c.span(), e.to_string()))?
                }
                None => w,
            }
        }
        (None, None) => return Err(FileError::Validation { line: None, message: "an explicit `dv` needs [potential] monomials".into() }),
    };

    let group = variety.chow_group();
    let kahler = raw.kahler.as_ref();
    let k = match (&v.offset, kahler.and_then(|k| k.k.as_ref())) {
        (Some(o), Some(_)) => return lines.invalid(o.span(), "give either `offset` or [kahler] `k`, not both"),
        (Some(o), None) => {
            let vals = exact_values(&lines, o)?;
            if vals.iter().any(|z| !z.im.is_zero()) {
                return lines.invalid(o.span(), "`offset` entries must be real");
            }
            if vals.len() != variety.divisor_count() {
                return lines.invalid(o.span(), format!("{} offsets for {} divisors", vals.len(), variety.divisor_count()));
            }
            let lift = vals.into_iter().map(|z| ComplexRational::new(Rational::zero(), z.re)).collect();
            ChowClass::new(group, lift).or_else(|e| lines.invalid(o.span(), e.to_string()))?
        }
        (None, Some(kv)) => {
            let vals = exact_values(&lines, kv)?;
            ChowClass::from_class_values(group, &vals).or_else(|e| lines.invalid(kv.span(), e.to_string()))?
        }
        (None, None) => default_class(group),
    };
    let l_group = cokernel(&potential.mon_matrix());
    let l = match kahler.and_then(|k| k.l.as_ref()) {
        Some(lv) => {
            let vals = exact_values(&lines, lv)?;
            ChowClass::from_class_values(l_group, &vals).or_else(|e| lines.invalid(lv.span(), e.to_string()))?
        }
        None => default_class(l_group),
    };
    Ok(ModelInput { degrees, variety, potential, k, l })
}

fn default_class(group: lgdual::ChowGroup) -> ChowClass {
    let f = group.free_rank;
    let i = ComplexRational::new(Rational::zero(), num_traits::One::one());
    ChowClass::from_class_values(group, &vec![i; f]).expect("one value per free coordinate")
}

pub fn load_model(path: &Path) -> Result<ModelInput, FileError> {
    let text = std::fs::read_to_string(path).map_err(|source| FileError::Io { path: path.display().to_string(), source })?;
    parse_model(&text)
}

#[derive(Serialize)]
struct OutFile {
    variety: OutVariety,
    potential: OutPotential,
    kahler: OutKahler,
}

#[derive(Serialize)]
struct OutVariety {
    dv: Vec<Vec<i64>>,
    labels: Vec<String>,
}

#[derive(Serialize)]
struct OutPotential {
    monomials: Vec<Vec<i64>>,
    coefficients: Vec<String>,
}

#[derive(Serialize)]
struct OutKahler {
    k: Vec<String>,
    l: Vec<String>,
}

fn small_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    use num_traits::ToPrimitive;
    m.rows().map(|r| r.iter().map(|v| v.to_i64().expect("entry fits in i64")).collect()).collect()
}

/// Serializes `model` with `l` in the format read by [`parse_model`].
pub fn write_model(model: &LgModel, l: &ChowClass) -> String {
    let out = OutFile {
        variety: OutVariety { dv: small_rows(&model.variety.dv), labels: model.variety.divisors.clone() },
        potential: OutPotential {
            monomials: small_rows(&model.mon_matrix()),
            coefficients: model.potential.coefficients().into_iter().map(format_complex_f64).collect(),
        },
        kahler: OutKahler {
            k: model.k_class.class_values().iter().map(format_complex).collect(),
            l: l.class_values().iter().map(format_complex).collect(),
        },
    };
    toml::to_string(&out).expect("plain tables serialize")
}

pub fn format_vector(v: &[Rational]) -> String {
    format!("[{}]", v.iter().map(format_rational).collect::<Vec<_>>().join(", "))
}
