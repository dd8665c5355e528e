//! Scalar traits shared by the polynomial and determinant code.
//!
//! Everything combinatorial in this crate is exact, so the concrete
//! instantiations are [`crate::Integer`] and [`crate::Rational`]. The
//! algebra is written against these traits so the same routines also run on
//! machine integers and on `f64` where an approximate cross-check is useful.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num};

/// A commutative ring with identity whose `/` is exact on divisible operands.
///
/// Fraction-free (Bareiss) elimination only ever divides by an earlier pivot
/// that is known to divide the numerator, so integer types qualify.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + FromPrimitive {}

impl<T> Scalar for T where T: Clone + Debug + PartialEq + Num + Neg<Output = T> + FromPrimitive {}

/// A [`Scalar`] with true division.
pub trait Field: Scalar {}

impl Field for f32 {}
impl Field for f64 {}
impl Field for Ratio<BigInt> {}
impl Field for Ratio<i64> {}

/// Exact conversion of a rational to an integer, if it is one.
pub fn rational_to_integer(r: &Ratio<BigInt>) -> Option<BigInt> {
    if r.is_integer() {
        Some(r.to_integer())
    } else {
        None
    }
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * BigInt::from(k))
}

/// `n!` for small `n` where the value fits in a `u64` (`n <= 20`).
pub fn factorial_u64(n: usize) -> u64 {
    assert!(n <= 20, "factorial_u64 overflows for n = {n}");
    (1..=n as u64).product()
}
