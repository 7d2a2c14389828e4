//! Integer partitions, conjugation, concatenation, majorization and the
//! Gale-Ryser realizability test.

use crate::error::{Error, Result};
use crate::scalar::Real;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// A nonincreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not nonincreasing")));
        }
        Ok(Partition(parts))
    }

    /// Sorts the positive entries of `values` into a partition, dropping zeros.
    pub fn from_unsorted(values: impl IntoIterator<Item = u32>) -> Self {
        let mut parts: Vec<u32> = values.into_iter().filter(|&v| v > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the parts.
    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    pub fn largest(&self) -> Option<u32> {
        self.0.first().copied()
    }

    /// The conjugate partition: part `i` counts the parts that are at least `i`.
    pub fn conjugate(&self) -> Partition {
        let top = self.largest().unwrap_or(0);
        let parts = (1..=top)
            .map(|i| self.0.iter().take_while(|&&p| p >= i).count() as u32)
            .collect();
        Partition(parts)
    }

    /// All partitions with at most `max_len` parts, each at most `max_part`,
    /// in reverse lexicographic order. Includes the empty partition.
    pub fn all_fitting(max_part: u32, max_len: usize) -> Vec<Partition> {
        fn rec(cap: u32, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            out.push(Partition(cur.clone()));
            if left == 0 {
                return;
            }
            for p in (1..=cap).rev() {
                cur.push(p);
                rec(p, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(max_part, max_len, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions of `n`.
    pub fn all_of(n: u32) -> Vec<Partition> {
        fn rec(left: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if left == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=cap.min(left)).rev() {
                cur.push(p);
                rec(left - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::InvalidPartition(format!("{t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// Concatenation `a ⊕ b`; the result need not be nonincreasing.
pub fn concat(a: &Partition, b: &Partition) -> Vec<u32> {
    a.0.iter().chain(b.0.iter()).copied().collect()
}

fn sorted_desc_padded<T: Copy + PartialOrd + Default>(v: &[T], len: usize) -> Vec<T> {
    let mut out = v.to_vec();
    out.resize(len, T::default());
    out.sort_by(|x, y| y.partial_cmp(x).expect("comparable entries"));
    out
}

/// Exact majorization `a ≺ b` for integer sequences. The shorter sequence is
/// zero-padded.
pub fn is_majorized_by(a: &[i64], b: &[i64]) -> bool {
    let len = a.len().max(b.len());
    let a = sorted_desc_padded(a, len);
    let b = sorted_desc_padded(b, len);
    let (mut sa, mut sb) = (0i64, 0i64);
    for k in 0..len {
        sa += a[k];
        sb += b[k];
        if sa > sb {
            return false;
        }
    }
    sa == sb
}

/// Majorization `a ≺ b` for real sequences with an absolute tolerance on
/// every prefix-sum comparison.
pub fn is_majorized_by_within<F: Real>(a: &[F], b: &[F], tol: F) -> bool {
    let len = a.len().max(b.len());
    let a = sorted_desc_padded(a, len);
    let b = sorted_desc_padded(b, len);
    let (mut sa, mut sb) = (F::zero(), F::zero());
    for k in 0..len {
        sa += a[k];
        sb += b[k];
        if sa > sb + tol {
            return false;
        }
    }
    (sa - sb).abs() <= tol
}

/// Default tolerance for real majorization.
pub const MAJORIZATION_TOL: f64 = 1e-9;

fn as_i64(p: &Partition) -> Vec<i64> {
    p.parts().iter().map(|&x| x as i64).collect()
}

/// Gale-Ryser: a bipartite graph with degree sequences `a` and `b` exists iff
/// `|a| = |b|` and `a ≺ b*`.
pub fn gale_ryser(a: &Partition, b: &Partition) -> bool {
    if a.weight() != b.weight() {
        return false;
    }
    is_majorized_by(&as_i64(a), &as_i64(&b.conjugate()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p("5,5,4,2,2,1").conjugate(), p("6,5,3,3,2"));
        assert_eq!(p("1").conjugate(), p("1"));
        assert_eq!(p("4,3,2,1").conjugate(), p("4,3,2,1"));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn conjugate_is_involution_exhaustive() {
        for a in Partition::all_fitting(12, 12).iter().step_by(7) {
            assert_eq!(a.conjugate().conjugate(), *a);
            assert_eq!(a.conjugate().weight(), a.weight());
        }
    }

    #[test]
    fn concat_examples() {
        assert_eq!(concat(&p("4,3,1"), &p("2,2")), vec![4, 3, 1, 2, 2]);
        assert_eq!(concat(&Partition::empty(), &p("3")), vec![3]);
        assert_eq!(concat(&p("3,3"), &p("3,3")), vec![3, 3, 3, 3]);
    }

    #[test]
    fn majorization_examples() {
        assert!(is_majorized_by(&[2, 2, 2], &[3, 2, 1]));
        assert!(!is_majorized_by(&[3, 2, 1], &[2, 2, 2]));
        assert!(is_majorized_by(&[1, 1], &[1, 1]));
        // unequal lengths are zero padded
        assert!(is_majorized_by(&[1, 1], &[2]));
        assert!(!is_majorized_by(&[2], &[1, 1]));
        assert!(is_majorized_by_within(&[2.0, 2.0, 2.0], &[3.0, 2.0, 1.0 + 1e-12], 1e-9));
        assert!(!is_majorized_by_within(&[2.0, 2.0, 2.0], &[3.0, 2.0, 1.1], 1e-9));
    }

    #[test]
    fn gale_ryser_examples() {
        assert!(gale_ryser(&p("3,3,2,1"), &p("4,3,2")));
        assert!(!gale_ryser(&p("2"), &p("1")));
        assert!(gale_ryser(&p("3,3,3"), &p("3,3,3")));
        assert!(gale_ryser(&p("3"), &p("1,1,1")));
        assert!(!gale_ryser(&p("2,2"), &p("4")));
    }

    #[test]
    fn gale_ryser_symmetric_small() {
        for n in 1..=20 {
            let all = Partition::all_of(n);
            for a in &all {
                for b in &all {
                    assert_eq!(gale_ryser(a, b), gale_ryser(b, a), "{a} / {b}");
                }
            }
        }
    }

    #[test]
    fn rejects_bad_partitions() {
        assert!("1,2".parse::<Partition>().is_err());
        assert!("3,0".parse::<Partition>().is_err());
        assert!("x".parse::<Partition>().is_err());
        assert_eq!(p("5,5,4,2,2,1").to_string(), "5,5,4,2,2,1");
    }
}
