//! Exact dense linear algebra over rationals and integers.

mod elimination;
mod ginverse;
mod matrix;

pub use elimination::{bareiss_det, det, inverse, solve};
pub use ginverse::{bordered_ginverse, moore_penrose_laplacian, GInverse, GInverseKind};
pub use matrix::Matrix;

use num_bigint::BigInt;
use num_rational::BigRational;

pub type RatMatrix = Matrix<BigRational>;
pub type IntMatrix = Matrix<BigInt>;

/// Lifts an integer matrix into the rationals.
pub fn to_rational(a: &IntMatrix) -> RatMatrix {
    a.map(|x| BigRational::from_integer(x.clone()))
}

/// Lifts a machine-integer matrix into the rationals.
pub fn rational_from_i64(a: &Matrix<i64>) -> RatMatrix {
    a.map(|&x| BigRational::from_integer(BigInt::from(x)))
}
