use super::elimination::inverse;
use super::RatMatrix;
use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GInverseKind {
    MoorePenrose,
    /// `L(pivot)^{-1}` embedded with a zero row and column at `pivot`.
    Bordered { pivot: usize },
}

impl fmt::Display for GInverseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GInverseKind::MoorePenrose => f.write_str("moore_penrose"),
            GInverseKind::Bordered { pivot } => write!(f, "bordered({pivot})"),
        }
    }
}

/// A generalized inverse `G` of a Laplacian `L`, checked to satisfy
/// `L G L = L` when built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GInverse {
    matrix: RatMatrix,
    kind: GInverseKind,
}

impl GInverse {
    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn kind(&self) -> GInverseKind {
        self.kind
    }

    /// `A G A = A`.
    pub fn is_ginverse_of(&self, a: &RatMatrix) -> bool {
        a.try_mul(&self.matrix)
            .and_then(|ag| ag.try_mul(a))
            .map(|aga| aga == *a)
            .unwrap_or(false)
    }

    /// Resistance readoff `h_ii + h_jj - h_ij - h_ji`.
    pub fn resistance(&self, i: usize, j: usize) -> BigRational {
        let h = &self.matrix;
        h.get(i, i) + h.get(j, j) - h.get(i, j) - h.get(j, i)
    }

    pub fn apply(&self, x: &[BigRational]) -> Result<Vec<BigRational>> {
        self.matrix.mul_vec(x)
    }
}

fn check_laplacian(l: &RatMatrix) -> Result<usize> {
    if !l.is_square() {
        return Err(Error::NotSquare {
            rows: l.nrows(),
            cols: l.ncols(),
        });
    }
    if !l.is_symmetric() {
        return Err(Error::Precondition("Laplacian must be symmetric".into()));
    }
    if l.rows().any(|r| !r.iter().fold(BigRational::zero(), |a, x| a + x).is_zero()) {
        return Err(Error::Precondition("Laplacian rows must sum to zero".into()));
    }
    Ok(l.nrows())
}

/// Moore-Penrose inverse of a connected-graph Laplacian via
/// `L⁺ = (L + J/n)^{-1} - J/n`. All four Penrose conditions are verified.
pub fn moore_penrose_laplacian(l: &RatMatrix) -> Result<GInverse> {
    let n = check_laplacian(l)?;
    if n == 0 {
        return Err(Error::Precondition("empty Laplacian".into()));
    }
    let j_over_n = RatMatrix::from_fn(n, n, |_, _| BigRational::new(1.into(), (n as i64).into()));
    let shifted = l + &j_over_n;
    let inv = inverse(&shifted).map_err(|e| match e {
        Error::Singular => Error::Disconnected,
        other => other,
    })?;
    let g = &inv - &j_over_n;

    let lg = l * &g;
    let gl = &g * l;
    if &lg * l != *l {
        return Err(Error::Disconnected);
    }
    if &gl * &g != g {
        return Err(Error::GInverseCheck("GLG != G".into()));
    }
    if !lg.is_symmetric() || !gl.is_symmetric() {
        return Err(Error::GInverseCheck("LG or GL not symmetric".into()));
    }
    if gl != centering(n) {
        return Err(Error::GInverseCheck("GL is not the centering projector".into()));
    }
    Ok(GInverse {
        matrix: g,
        kind: GInverseKind::MoorePenrose,
    })
}

/// The bordered g-inverse at vertex `pivot` (0-based).
pub fn bordered_ginverse(l: &RatMatrix, pivot: usize) -> Result<GInverse> {
    let n = check_laplacian(l)?;
    if pivot >= n {
        return Err(Error::InvalidVertex {
            vertex: pivot,
            count: n,
        });
    }
    let reduced = inverse(&l.principal_minor(&[pivot])).map_err(|e| match e {
        Error::Singular => Error::Disconnected,
        other => other,
    })?;
    let idx = |k: usize| if k < pivot { k } else { k - 1 };
    let h = RatMatrix::from_fn(n, n, |a, b| {
        if a == pivot || b == pivot {
            BigRational::zero()
        } else {
            reduced.get(idx(a), idx(b)).clone()
        }
    });
    let g = GInverse {
        matrix: h,
        kind: GInverseKind::Bordered { pivot },
    };
    if !g.is_ginverse_of(l) {
        return Err(Error::GInverseCheck(format!("bordered at {pivot}: LHL != L")));
    }
    Ok(g)
}

/// `I - J/n`, the projector onto the complement of the all-ones vector.
pub(crate) fn centering(n: usize) -> RatMatrix {
    let inv_n = BigRational::new(1.into(), (n as i64).into());
    RatMatrix::from_fn(n, n, |i, j| {
        if i == j {
            BigRational::one() - &inv_n
        } else {
            -inv_n.clone()
        }
    })
}
