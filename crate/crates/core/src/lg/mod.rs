//! Landau–Ginzburg models on toric varieties.

mod chow;
mod model;
mod potential;

pub use chow::{complex_rational, ChowClass};
pub use model::{
    dual_linear_data, dualize, dualize_labeled, exp_coefficient, is_kopaseptic, sum_models, KopasepticReport, LgModel, LinearData,
};
pub use potential::{generic_sections, is_regular, monomial_label, order_matrix, Superpotential, Term};
