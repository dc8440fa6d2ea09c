//! Toric Landau–Ginzburg models as integer linear data.
//!
//! A model `(X, W, K)` is stored as the divisor matrix of the toric variety
//! `X`, the exponent matrix of the superpotential `W`, and a class `K` in the
//! Chow group with `C/Z` coefficients. Exchanging the two matrix/class pairs
//! gives the dual model; [`selfdual`] decides when the dual is the model
//! itself and classifies total spaces of split bundles over `P^1`.
//!
//! The exact algorithms in [`linalg`] and [`polyhedra`] are generic over the
//! integer type (see [`Scalar`]); the domain layers use the arbitrary-precision
//! aliases below.

pub mod lg;
pub mod linalg;
pub mod polyhedra;
mod scalar;
pub mod selfdual;
pub mod toric;

pub use scalar::{Scalar, Q};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;

pub type Integer = BigInt;
pub type Rational = BigRational;
pub type ComplexRational = Complex<BigRational>;

pub type IntMatrix = linalg::Matrix<Integer>;
pub type SmithDecomposition = linalg::Smith<Integer>;
pub type ChowGroup = linalg::Cokernel<Integer>;
pub type HalfspaceSystem = polyhedra::Halfspaces<Integer>;
pub type FacetReport = polyhedra::Facets<Integer>;

pub use lg::{ChowClass, KopasepticReport, LgModel, LinearData, Superpotential, Term};
pub use selfdual::{BundleVerdict, SelfDualityWitness};
pub use toric::{BundleSpec, ToricData};

/// Which kopaseptic condition failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KopasepticFailure {
    EmptyInterior,
    NoKMap,
    NegativeOrders,
}

impl std::fmt::Display for KopasepticFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            KopasepticFailure::EmptyInterior => "polyhedral set has empty interior",
            KopasepticFailure::NoKMap => "no generator-to-generator-or-zero map onto the facets",
            KopasepticFailure::NegativeOrders => "A·Bᵀ has a negative entry",
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polyhedral set has empty interior")]
    EmptyInterior,
    #[error("not kopaseptic: {0}")]
    NotKopaseptic(KopasepticFailure),
    #[error("class lives in a different group: {0}")]
    GroupMismatch(String),
    #[error("invalid superpotential: {0}")]
    InvalidPotential(String),
    #[error("superpotential is not regular on the variety")]
    NotRegular,
}

pub(crate) fn int(v: i64) -> Integer {
    Integer::from(v)
}
