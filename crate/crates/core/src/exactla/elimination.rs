use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::scalar::{ExactField, ExactRing};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

fn require_square<T: crate::scalar::Scalar>(a: &Matrix<T>) -> Result<usize> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    Ok(a.nrows())
}

/// Fraction-free (Bareiss) determinant over an integral domain. Every
/// division in the recurrence is exact.
pub fn bareiss_det<T: ExactRing>(a: &Matrix<T>) -> Result<T> {
    let n = require_square(a)?;
    if n == 0 {
        return Ok(T::one());
    }
    let mut m: Vec<Vec<T>> = a.rows().map(|r| r.to_vec()).collect();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Ok(T::zero());
            };
            m.swap(k, r);
            negate = !negate;
        }
        let (top, bottom) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = pivot_row[k].clone();
        for row in bottom.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let v = row[j].clone() * pivot.clone() - lead.clone() * pivot_row[j].clone();
                row[j] = v / prev.clone();
            }
            row[k] = T::zero();
        }
        prev = pivot;
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { T::zero() - d } else { d })
}

/// Exact rational determinant: rows are cleared of denominators, the integer
/// matrix goes through Bareiss, and the scale is divided back out.
pub fn det(a: &Matrix<BigRational>) -> Result<BigRational> {
    require_square(a)?;
    let mut scale = BigInt::one();
    let mut rows = Vec::with_capacity(a.nrows());
    for r in a.rows() {
        let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        rows.push(
            r.iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect::<Vec<BigInt>>(),
        );
        scale *= l;
    }
    let int = Matrix::from_rows(rows)?;
    Ok(BigRational::new(bareiss_det(&int)?, scale))
}

/// Gauss-Jordan reduction of `[a | b]`; returns the reduced right block.
fn gauss_jordan<T: ExactField>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    let n = require_square(a)?;
    if b.nrows() != n {
        return Err(Error::DimensionMismatch(format!(
            "system of order {n} with {} right-hand rows",
            b.nrows()
        )));
    }
    let w = b.ncols();
    let mut m: Vec<Vec<T>> = (0..n)
        .map(|i| a.row(i).iter().chain(b.row(i)).cloned().collect())
        .collect();
    for k in 0..n {
        let r = (k..n).find(|&r| !m[r][k].is_zero()).ok_or(Error::Singular)?;
        m.swap(k, r);
        let inv = T::one() / m[k][k].clone();
        for x in m[k].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = m[k].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == k || row[k].is_zero() {
                continue;
            }
            let factor = row[k].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.clone() - factor.clone() * p.clone();
                }
            }
        }
    }
    Ok(Matrix::from_fn(n, w, |i, j| m[i][n + j].clone()))
}

/// Exact inverse; errors on singular input.
pub fn inverse<T: ExactField>(a: &Matrix<T>) -> Result<Matrix<T>> {
    let n = require_square(a)?;
    gauss_jordan(a, &Matrix::identity(n))
}

/// Exact solution of `a x = b` for nonsingular square `a`.
pub fn solve<T: ExactField>(a: &Matrix<T>, b: &[T]) -> Result<Vec<T>> {
    let rhs = Matrix::from_fn(b.len(), 1, |i, _| b[i].clone());
    let x = gauss_jordan(a, &rhs)?;
    Ok((0..b.len()).map(|i| x.get(i, 0).clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{FromPrimitive, Zero};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> BigRational {
        BigRational::from_i64(n).unwrap()
    }

    fn qm(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()).unwrap()
    }

    /// Cofactor expansion along the first row.
    fn cofactor_det(a: &Matrix<i64>) -> i64 {
        let n = a.nrows();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * a.get(0, j) * cofactor_det(&a.minor(&[0], &[j]))
            })
            .sum()
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 0..=6 {
            for _ in 0..40 {
                let a = Matrix::from_fn(n, n, |_, _| rng.gen_range(-4i64..=4));
                let expected = cofactor_det(&a);
                assert_eq!(bareiss_det(&a).unwrap(), expected);
                let big = a.map(|&x| BigInt::from(x));
                assert_eq!(bareiss_det(&big).unwrap(), BigInt::from(expected));
                assert_eq!(det(&super::super::rational_from_i64(&a)).unwrap(), q(expected));
            }
        }
    }

    #[test]
    fn det_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=5 {
            for _ in 0..20 {
                let a = Matrix::from_fn(n, n, |_, _| q(rng.gen_range(-5..=5)));
                let b = Matrix::from_fn(n, n, |_, _| q(rng.gen_range(-5..=5)));
                assert_eq!(det(&(&a * &b)).unwrap(), det(&a).unwrap() * det(&b).unwrap());
            }
        }
    }

    #[test]
    fn det_of_rational_entries() {
        let half = BigRational::new(1.into(), 2.into());
        let a = Matrix::from_rows(vec![vec![half.clone(), q(1)], vec![q(1), half.clone()]]).unwrap();
        assert_eq!(det(&a).unwrap(), BigRational::new((-3).into(), 4.into()));
        assert_eq!(det(&Matrix::<BigRational>::identity(5)).unwrap(), q(1));
        assert!(det(&Matrix::<BigRational>::zeros(2, 3)).is_err());
    }

    #[test]
    fn solve_examples() {
        let a = qm(&[&[2, 1], &[1, 1]]);
        assert_eq!(solve(&a, &[q(3), q(2)]).unwrap(), vec![q(1), q(1)]);
        let b = vec![q(4), q(-1), q(7)];
        assert_eq!(solve(&Matrix::identity(3), &b).unwrap(), b);
        assert_eq!(solve(&qm(&[&[1, 2], &[2, 4]]), &[q(1), q(1)]), Err(Error::Singular));
    }

    #[test]
    fn inverse_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=6 {
            let a = Matrix::from_fn(n, n, |_, _| q(rng.gen_range(-6..=6)));
            if det(&a).unwrap().is_zero() {
                continue;
            }
            let inv = inverse(&a).unwrap();
            assert_eq!(&a * &inv, Matrix::identity(n));
        }
    }
}
