//! Scalar traits shared by the generic matrix and eigen routines.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FromPrimitive, Num, NumAssign, Signed};
use std::fmt::{Debug, Display};

/// A ring scalar with exact zero tests: everything the dense matrix code needs.
pub trait Scalar: Clone + Num + Debug + Send + Sync + 'static {}

impl<T> Scalar for T where T: Clone + Num + Debug + Send + Sync + 'static {}

/// Scalars where division is exact (fields). Elimination pivots on the first
/// nonzero entry, which is only meaningful when zero tests are exact.
pub trait ExactField: Scalar + Signed {}

impl ExactField for BigRational {}
impl ExactField for num_rational::Rational64 {}

/// Integral domains with exact division, as used by fraction-free elimination.
pub trait ExactRing: Scalar + Signed {}

impl ExactRing for BigInt {}
impl ExactRing for i64 {}
impl ExactRing for i128 {}

/// Floating scalars for the spectral routines (f32 / f64).
pub trait Real: Float + NumAssign + FromPrimitive + Default + Debug + Display + Send + Sync + 'static {
    fn lit(x: f64) -> Self {
        Self::from_f64(x).unwrap()
    }
}

impl Real for f32 {}
impl Real for f64 {}
