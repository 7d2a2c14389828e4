//! Exact spanning-tree, resistance-distance and spectral analysis of
//! bipartite graphs, with Ferrers graphs as the distinguished family.
//!
//! Exact work (tree counts, g-inverses, resistance) runs over arbitrary
//! precision rationals; spectral work runs over any [`Real`] scalar.

pub mod conjectures;
pub mod error;
pub mod exactla;
pub mod graphs;
pub mod partitions;
pub mod report;
pub mod resistance;
pub mod scalar;
pub mod search;
pub mod spectral;
pub mod trees;

pub use error::{Error, Result};
pub use graphs::{BVertex, BipartiteGraph, Graph, Side};
pub use partitions::Partition;
pub use scalar::{ExactField, ExactRing, Real, Scalar};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Dense exact rational matrix.
pub type RatMatrix = exactla::Matrix<BigRational>;
/// Dense arbitrary-precision integer matrix.
pub type IntMatrix = exactla::Matrix<BigInt>;
/// Dense double-precision matrix.
pub type RealMatrix = exactla::Matrix<f64>;
/// Integer-coefficient multivariate polynomial.
pub type IntPoly = trees::MultiPoly<BigInt>;
