//! Explicit solution vector and tree-count recursion for Ferrers graphs.

use super::{resistance, resistance_in_component, IncidenceVector};
use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::graphs::ferrers_from_partition;
use crate::partitions::Partition;
use crate::trees::tau_bipartite;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma81Report {
    pub p: usize,
    pub k: usize,
    /// `L w = x_f` for `f = {u_p, v_n}`.
    pub w_is_solution: bool,
    /// `r(u_{p+1}, v_k)` unchanged when `f` is deleted. When `f` is a
    /// pendant edge the deleted graph is measured on the component holding both ends.
    pub resistance_equal: bool,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub resistance: BigRational,
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// Checks the hypotheses shared by both verifiers: `1 <= p < m`,
/// `lambda_1 = ... = lambda_p = n` and `lambda_{p+1} = k < n`.
fn corner(lambda: &Partition, p: usize, k: usize) -> Result<(usize, usize)> {
    let parts = lambda.parts();
    let m = parts.len();
    let n = lambda.largest().unwrap_or(0) as usize;
    if p == 0 || p >= m {
        return Err(Error::Precondition(format!("need 1 <= p < {m}, got p = {p}")));
    }
    if parts[..p].iter().any(|&x| x as usize != n) {
        return Err(Error::Precondition(format!("the first {p} parts must all equal {n}")));
    }
    if parts[p] as usize != k || k >= n {
        return Err(Error::Precondition(format!(
            "part {} is {}, expected k = {k} < {n}",
            p + 1,
            parts[p]
        )));
    }
    Ok((m, n))
}

/// Verifies the explicit solution of `L w = x_f` and the resulting resistance equality.
///
/// `p` and `k` are 1-based as in the usual statement.
pub fn lemma81_verify(lambda: &Partition, p: usize, k: usize) -> Result<Lemma81Report> {
    let (m, n) = corner(lambda, p, k)?;
    let g = ferrers_from_partition(lambda, n)?.to_graph();
    let total = m + n;
    let np = (n * p) as i64;
    let mut w = vec![BigRational::zero(); total];
    for x in w.iter_mut().take(p - 1) {
        *x = q(-1, np);
    }
    w[p - 1] = q(p as i64 - 1, np);
    w[total - 1] = q(-1, p as i64);
    let l: Matrix<BigRational> = g.laplacian_rational();
    let xf = IncidenceVector::for_edge(total, p - 1, total - 1)?.to_vec();
    let w_is_solution = l.mul_vec(&w)? == xf;

    let (a, b) = (p, m + k - 1);
    let r = resistance(&g, a, b)?;
    let r_f = resistance_in_component(&g.without_edge(p - 1, total - 1)?, a, b)?;
    Ok(Lemma81Report {
        p,
        k,
        w_is_solution,
        resistance_equal: r == r_f,
        resistance: r,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InductionReport {
    pub p: usize,
    pub k: usize,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub tau: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub tau_minus_e: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub tau_minus_f: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub tau_minus_ef: BigInt,
    /// `tau(G) tau(G - e - f) = tau(G - e) tau(G - f)`.
    pub holds: bool,
    /// The three deleted graphs match the product formula.
    pub closed_forms_hold: bool,
    /// `tau(G - e - f) = 0`, so the quotient form is undefined.
    pub degenerate: bool,
}

/// Product of degrees divided by `|U| |V|`, the closed form for a Ferrers graph.
fn product_formula(rows: &[u32], cols: &[u32]) -> BigRational {
    let prod = |xs: &[u32]| xs.iter().fold(BigInt::one(), |a, &x| a * x);
    let (m, n) = (rows.len(), cols.len());
    BigRational::new(prod(rows) * prod(cols), BigInt::from(m) * BigInt::from(n))
}

/// Four independent Matrix-Tree counts around the corner `e = {u_{p+1}, v_k}`,
/// `f = {u_p, v_n}`, where `p` is the number of full rows.
pub fn induction_identity_check(lambda: &Partition) -> Result<InductionReport> {
    let parts = lambda.parts();
    let n = lambda.largest().ok_or_else(|| Error::InvalidPartition("empty partition".into()))? as usize;
    let p = parts.iter().take_while(|&&x| x as usize == n).count();
    if p == parts.len() {
        return Err(Error::Precondition("complete bipartite graph has no edge e".into()));
    }
    let k = parts[p] as usize;
    corner(lambda, p, k)?;
    let m = parts.len();
    let g = ferrers_from_partition(lambda, n)?;
    let e = (p, k - 1);
    let f = (p - 1, n - 1);
    let ge = g.without_edge(e.0, e.1)?;
    let gf = g.without_edge(f.0, f.1)?;
    let gef = ge.without_edge(f.0, f.1)?;
    let t = tau_bipartite(&g);
    let te = tau_bipartite(&ge);
    let tf = tau_bipartite(&gf);
    let tef = tau_bipartite(&gef);
    let holds = &t * &tef == &te * &tf;

    let closed = |h: &crate::graphs::BipartiteGraph, t: &BigInt| {
        let expected = product_formula(&h.row_degrees(), &h.col_degrees());
        expected == BigRational::from_integer(t.clone())
    };
    debug_assert_eq!(g.m(), m);
    let closed_forms_hold = closed(&g, &t) && closed(&ge, &te) && closed(&gf, &tf) && closed(&gef, &tef);
    Ok(InductionReport {
        p,
        k,
        degenerate: tef.is_zero(),
        tau: t,
        tau_minus_e: te,
        tau_minus_f: tf,
        tau_minus_ef: tef,
        holds,
        closed_forms_hold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn lemma81_small_cases() {
        let r = lemma81_verify(&part("3,3,2,1"), 2, 2).unwrap();
        assert!(r.w_is_solution && r.resistance_equal);
        let r = lemma81_verify(&part("2,1"), 1, 1).unwrap();
        assert!(r.w_is_solution && r.resistance_equal);
        assert!(lemma81_verify(&part("3,3,2,1"), 1, 3).is_err());
        assert!(lemma81_verify(&part("3,3,2,1"), 2, 1).is_err());
        assert!(lemma81_verify(&part("3,3"), 2, 1).is_err());
    }

    #[test]
    fn lemma81_all_small_partitions() {
        for size in 2..=9 {
            for lambda in Partition::all_of(size) {
                let n = lambda.largest().unwrap() as usize;
                let parts = lambda.parts();
                let p = parts.iter().take_while(|&&x| x as usize == n).count();
                if p == parts.len() {
                    continue;
                }
                let r = lemma81_verify(&lambda, p, parts[p] as usize).unwrap();
                assert!(r.w_is_solution && r.resistance_equal, "{lambda}");
            }
        }
    }

    #[test]
    fn induction_identity() {
        let r = induction_identity_check(&part("2,1")).unwrap();
        assert!(r.holds && r.degenerate);
        assert_eq!(r.tau, BigInt::one());
        let r = induction_identity_check(&part("3,3,2,1")).unwrap();
        assert!(r.holds && r.closed_forms_hold && !r.degenerate);
        assert!(induction_identity_check(&part("2,2")).is_err());
        for size in 2..=10 {
            for lambda in Partition::all_of(size) {
                if let Ok(r) = induction_identity_check(&lambda) {
                    assert!(r.holds && r.closed_forms_hold, "{lambda}");
                }
            }
        }
    }
}
