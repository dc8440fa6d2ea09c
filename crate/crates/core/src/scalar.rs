//! Scalar bound shared by the exact integer algorithms.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// An exact signed integer ring element.
///
/// Implemented for every type with the listed capabilities, which in practice
/// means `BigInt` and the primitive signed integers. Primitive widths are handy
/// for fast brute-force checks in tests; they are only exact while no
/// intermediate value overflows, so the crate-level aliases use `BigInt`.
pub trait Scalar: Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static {
    /// Converts a machine integer, panicking if it does not fit.
    fn of(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("value does not fit the scalar type")
    }
}

impl<T> Scalar for T where T: Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static {}

/// Rational numbers over a scalar.
pub type Q<T> = Ratio<T>;

pub(crate) fn q_int<T: Scalar>(v: T) -> Q<T> {
    Ratio::from_integer(v)
}
