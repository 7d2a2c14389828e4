use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::scalar::Real;

/// Sweep limit for the cyclic Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;
/// Off-diagonal Frobenius norm at which the iteration stops.
pub const OFF_DIAGONAL_TOL: f64 = 1e-13;

/// Eigen-decomposition of a real symmetric matrix.
#[derive(Debug, Clone)]
pub struct SymmetricEigen<F: Real> {
    /// Eigenvalues, nonincreasing.
    pub values: Vec<F>,
    /// Column `k` is the unit eigenvector for `values[k]`.
    pub vectors: Matrix<F>,
    pub sweeps: usize,
}

impl<F: Real> SymmetricEigen<F> {
    /// `max_k ‖A v_k − λ_k v_k‖`.
    pub fn residual(&self, a: &Matrix<F>) -> F {
        let n = a.nrows();
        let mut worst = F::zero();
        for k in 0..n {
            let mut sq = F::zero();
            for i in 0..n {
                let mut av = F::zero();
                for j in 0..n {
                    av += *a.get(i, j) * *self.vectors.get(j, k);
                }
                let r = av - self.values[k] * *self.vectors.get(i, k);
                sq += r * r;
            }
            worst = worst.max(sq.sqrt());
        }
        worst
    }
}

fn off_norm<F: Real>(a: &[Vec<F>]) -> F {
    let n = a.len();
    let mut s = F::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i][j] * a[i][j];
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi rotations until the off-diagonal norm falls below
/// `max(1e-13, ε·‖A‖_F)`.
pub fn symmetric_eigen<F: Real>(a: &Matrix<F>) -> Result<SymmetricEigen<F>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    let n = a.nrows();
    let mut m: Vec<Vec<F>> = a.rows().map(|r| r.to_vec()).collect();
    for i in 0..n {
        for j in 0..i {
            if (m[i][j] - m[j][i]).abs() > F::lit(1e-12) * (F::one() + m[i][j].abs()) {
                return Err(Error::Precondition("matrix is not symmetric".into()));
            }
        }
    }
    let mut v: Vec<Vec<F>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect())
        .collect();
    let frob = m.iter().flatten().fold(F::zero(), |s, &x| s + x * x).sqrt();
    let tol = F::lit(OFF_DIAGONAL_TOL).max(F::epsilon() * frob);

    let mut sweeps = 0;
    while off_norm(&m) > tol {
        if sweeps == MAX_SWEEPS {
            return Err(Error::Inconsistent(format!(
                "Jacobi did not converge in {MAX_SWEEPS} sweeps"
            )));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p][q];
                if apq == F::zero() {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (F::lit(2.0) * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + F::one()).sqrt());
                let c = F::one() / (t * t + F::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = m[k][p];
                    let akq = m[k][q];
                    m[k][p] = c * akp - s * akq;
                    m[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = m[p][k];
                    let aqk = m[q][k];
                    m[p][k] = c * apk - s * aqk;
                    m[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| m[y][y].partial_cmp(&m[x][x]).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&k| m[k][k]).collect();
    let vectors = Matrix::from_fn(n, n, |i, k| v[i][order[k]]);
    Ok(SymmetricEigen {
        values,
        vectors,
        sweeps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn diagonal_and_known_spectra() {
        let a: Matrix<f64> = Matrix::from_rows(vec![vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let e = symmetric_eigen(&a).unwrap();
        assert!((e.values[0] - 3.0).abs() < 1e-14);
        assert!((e.values[1] - 1.0).abs() < 1e-14);
        assert!(e.residual(&a) < 1e-13);
        let d: Matrix<f64> = Matrix::from_fn(3, 3, |i, j| if i == j { i as f64 } else { 0.0 });
        assert_eq!(symmetric_eigen(&d).unwrap().values, vec![2.0, 1.0, 0.0]);
    }

    #[test]
    fn random_symmetric_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=12 {
            let mut a = Matrix::<f64>::zeros(n, n);
            for i in 0..n {
                for j in 0..=i {
                    let x: f64 = rng.gen_range(-3.0..3.0);
                    a.set(i, j, x);
                    a.set(j, i, x);
                }
            }
            let e = symmetric_eigen(&a).unwrap();
            let scale = e.values.iter().fold(0.0f64, |s, x| s.max(x.abs()));
            assert!(e.residual(&a) <= 1e-9 * (1.0 + scale));
            let trace: f64 = (0..n).map(|i| a.get(i, i)).sum();
            assert!((trace - e.values.iter().sum::<f64>()).abs() < 1e-10);
            assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn works_in_single_precision() {
        let a = Matrix::from_rows(vec![vec![4.0f32, 1.0], vec![1.0, 3.0]]).unwrap();
        let e = symmetric_eigen(&a).unwrap();
        let expected = 3.5 + (1.25f32).sqrt();
        assert!((e.values[0] - expected).abs() < 1e-5);
    }

    #[test]
    fn rejects_asymmetric() {
        let a = Matrix::from_rows(vec![vec![1.0, 2.0], vec![0.0, 1.0]]).unwrap();
        assert!(symmetric_eigen(&a).is_err());
    }
}
