//! Single-graph checks of the spanning-tree bounds and majorization facts.

use crate::error::{Error, Result};
use crate::graphs::{BipartiteGraph, Graph};
use crate::partitions::{is_majorized_by, is_majorized_by_within, Partition, MAJORIZATION_TOL};
use crate::report::{rational_string, round12};
use crate::spectral::laplacian_spectrum;
use crate::trees::{tau, tau_bipartite};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::{json, Map, Value};

/// One side of a bound.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundValue {
    Exact(BigRational),
    /// `coefficient * sqrt(radicand)`, compared exactly by squaring.
    RationalTimesSqrt { coefficient: BigRational, radicand: BigRational },
    Real(f64),
}

impl BoundValue {
    pub fn approx(&self) -> f64 {
        let f = |r: &BigRational| r.to_f64().unwrap_or(f64::NAN);
        match self {
            BoundValue::Exact(r) => f(r),
            BoundValue::RationalTimesSqrt { coefficient, radicand } => f(coefficient) * f(radicand).sqrt(),
            BoundValue::Real(x) => *x,
        }
    }
}

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        match self {
            BoundValue::Exact(r) => {
                map.serialize_entry("type", "exact")?;
                map.serialize_entry("value", &rational_string(r))?;
            }
            BoundValue::RationalTimesSqrt { coefficient, radicand } => {
                map.serialize_entry("type", "rational_times_sqrt")?;
                map.serialize_entry("coefficient", &rational_string(coefficient))?;
                map.serialize_entry("radicand", &rational_string(radicand))?;
                map.serialize_entry("approx", &round12(self.approx()))?;
            }
            BoundValue::Real(x) => {
                map.serialize_entry("type", "real")?;
                map.serialize_entry("value", &round12(*x))?;
            }
        }
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: &'static str,
    pub lhs: BoundValue,
    pub rhs: BoundValue,
    /// Absolute tolerance when either side is real; absent for exact comparisons.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// `None` when the hypotheses of a conditional statement fail.
    pub holds: Option<bool>,
    pub equality: bool,
    pub notes: Map<String, Value>,
}

impl BoundReport {
    pub fn holds(&self) -> bool {
        self.holds == Some(true)
    }
}

fn exact(name: &'static str, lhs: BigRational, rhs: BigRational, notes: Map<String, Value>) -> BoundReport {
    BoundReport {
        name,
        holds: Some(lhs <= rhs),
        equality: lhs == rhs,
        lhs: BoundValue::Exact(lhs),
        rhs: BoundValue::Exact(rhs),
        tolerance: None,
        notes,
    }
}

fn int(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

fn degree_product(g: &BipartiteGraph) -> BigInt {
    g.row_degrees()
        .into_iter()
        .chain(g.col_degrees())
        .fold(BigInt::one(), |acc, d| acc * d)
}

fn notes(pairs: Vec<(&str, Value)>) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// `tau(G) <= prod d_v / |E|`, with equality exactly for complete bipartite graphs.
pub fn bozkurt_check(g: &BipartiteGraph) -> BoundReport {
    let t = tau_bipartite(g);
    let e = g.edge_count();
    let rhs = if e == 0 {
        BigRational::zero()
    } else {
        BigRational::new(degree_product(g), BigInt::from(e))
    };
    let complete = g.is_complete_bipartite();
    let mut r = exact("bozkurt", int(t), rhs, Map::new());
    r.notes = notes(vec![
        ("complete_bipartite", json!(complete)),
        ("equality_matches_structure", json!(r.equality == complete)),
    ]);
    r
}

/// `tau(G) <= prod (d_i + 1/2) prod (e_j + 1/2) sqrt(e_1)` with `d` the first
/// part's degrees, `e` the second part's, and `e_1` the largest of `e`.
pub fn venkataramana_check(g: &BipartiteGraph) -> BoundReport {
    let half = BigRational::new(1.into(), 2.into());
    let prod = |ds: Vec<u32>| ds.into_iter().fold(BigRational::one(), |acc, d| acc * (int(d) + &half));
    let cols = g.col_degrees();
    let e1 = cols.iter().copied().max().unwrap_or(0);
    let coefficient = prod(g.row_degrees()) * prod(cols);
    let lhs = int(tau_bipartite(g));
    let radicand = int(e1);
    let rhs_sq = &coefficient * &coefficient * &radicand;
    let lhs_sq = &lhs * &lhs;
    BoundReport {
        name: "venkataramana",
        holds: Some(lhs_sq <= rhs_sq),
        equality: lhs_sq == rhs_sq,
        lhs: BoundValue::Exact(lhs),
        rhs: BoundValue::RationalTimesSqrt { coefficient, radicand },
        tolerance: None,
        notes: notes(vec![("e1", json!(e1))]),
    }
}

/// Largest prefix-sum excess of `a` over `b` (both sorted nonincreasing and
/// zero-padded) and the difference of totals.
fn prefix_excess(a: &[f64], b: &[f64]) -> (f64, f64, bool) {
    let len = a.len().max(b.len());
    let sorted = |v: &[f64]| {
        let mut v = v.to_vec();
        v.resize(len, 0.0);
        v.sort_by(|x, y| y.total_cmp(x));
        v
    };
    let (a, b) = (sorted(a), sorted(b));
    let (mut sa, mut sb, mut worst, mut tight) = (0.0, 0.0, f64::NEG_INFINITY, true);
    for k in 0..len {
        sa += a[k];
        sb += b[k];
        worst = f64::max(worst, sa - sb);
        tight &= (sa - sb).abs() <= MAJORIZATION_TOL;
    }
    (if len == 0 { 0.0 } else { worst }, sa - sb, tight)
}

fn majorization_report(name: &'static str, a: &[f64], b: &[f64], extra: Vec<(&str, Value)>) -> BoundReport {
    let (worst, total, tight) = prefix_excess(a, b);
    let holds = is_majorized_by_within(a, b, MAJORIZATION_TOL);
    debug_assert_eq!(holds, worst <= MAJORIZATION_TOL && total.abs() <= MAJORIZATION_TOL);
    let mut n = notes(vec![("total_difference", json!(round12(total)))]);
    n.extend(notes(extra));
    BoundReport {
        name,
        lhs: BoundValue::Real(worst),
        rhs: BoundValue::Real(0.0),
        tolerance: Some(MAJORIZATION_TOL),
        holds: Some(holds),
        equality: tight,
        notes: n,
    }
}

fn degree_partition(g: &Graph) -> Partition {
    Partition::from_unsorted(g.degrees())
}

/// Laplacian spectrum majorized by the conjugate degree partition. `lhs` is
/// the worst prefix-sum excess, `rhs` is zero.
pub fn grone_merris_check(g: &Graph) -> BoundReport {
    let spectrum = laplacian_spectrum::<f64>(g);
    let conj: Vec<f64> = degree_partition(g).conjugate().parts().iter().map(|&x| x as f64).collect();
    majorization_report("grone_merris", &spectrum, &conj, vec![])
}

/// Degree sequence majorized by the Laplacian spectrum (Schur-Horn).
pub fn hermitian_majorization_check(g: &Graph) -> BoundReport {
    let spectrum = laplacian_spectrum::<f64>(g);
    let degrees: Vec<f64> = g.degrees().into_iter().map(f64::from).collect();
    majorization_report("hermitian", &degrees, &spectrum, vec![])
}

/// `tau(G) <= prod d / (|X| |Y|)` with the left side from Matrix-Tree.
pub fn eq3_chain_check(g: &BipartiteGraph) -> BoundReport {
    let connected = g.is_connected();
    let lhs = if connected { int(tau_bipartite(g)) } else { BigRational::zero() };
    let rhs = BigRational::new(degree_product(g), BigInt::from(g.m() * g.n()));
    exact("eq3", lhs, rhs, notes(vec![("connected", json!(connected))]))
}

/// The conditional product inequality on sequences: if `a ≺ b*` and
/// `d ≺ λ ≺ d*` then `(1/n) prod λ <= (1/pq) prod d`.
///
/// `d` must be the sorted concatenation of `a` and `b`, and `lambda` must
/// have one entry fewer than `d`.
pub fn conjecture65_check(d: &Partition, lambda: &[f64], a: &Partition, b: &Partition) -> Result<BoundReport> {
    let n = d.len();
    if lambda.len() + 1 != n {
        return Err(Error::DimensionMismatch(format!(
            "lambda has {} entries, expected {}",
            lambda.len(),
            n.saturating_sub(1)
        )));
    }
    let joined = Partition::from_unsorted(a.parts().iter().chain(b.parts()).copied());
    if joined != *d || a.is_empty() || b.is_empty() {
        return Err(Error::Precondition("d must be the concatenation of a and b".into()));
    }
    if lambda.windows(2).any(|w| w[0] < w[1]) || lambda.iter().any(|&x| x <= 0.0 || !x.is_finite()) {
        return Err(Error::Precondition("lambda must be positive and nonincreasing".into()));
    }
    let to_i = |p: &Partition| p.parts().iter().map(|&x| x as i64).collect::<Vec<_>>();
    let to_f = |p: &Partition| p.parts().iter().map(|&x| x as f64).collect::<Vec<_>>();
    let gale_ryser = is_majorized_by(&to_i(a), &to_i(&b.conjugate()));
    let lower = is_majorized_by_within(&to_f(d), lambda, MAJORIZATION_TOL);
    let upper = is_majorized_by_within(lambda, &to_f(&d.conjugate()), MAJORIZATION_TOL);
    let lhs = lambda.iter().product::<f64>() / n as f64;
    let rhs_exact = BigRational::new(
        d.parts().iter().fold(BigInt::one(), |acc, &x| acc * x),
        BigInt::from(a.len() * b.len()),
    );
    let rhs = rhs_exact.to_f64().unwrap_or(f64::INFINITY);
    let tol = MAJORIZATION_TOL * rhs.abs().max(1.0);
    let hypotheses = gale_ryser && lower && upper;
    Ok(BoundReport {
        name: "conjecture65",
        lhs: BoundValue::Real(lhs),
        rhs: BoundValue::Exact(rhs_exact),
        tolerance: Some(tol),
        holds: hypotheses.then_some(lhs <= rhs + tol),
        equality: hypotheses && (lhs - rhs).abs() <= tol,
        notes: notes(vec![
            ("hypotheses_met", json!(hypotheses)),
            ("a_majorized_by_b_conjugate", json!(gale_ryser)),
            ("d_majorized_by_lambda", json!(lower)),
            ("lambda_majorized_by_d_conjugate", json!(upper)),
        ]),
    })
}

/// The instance of [`conjecture65_check`] read off a connected bipartite
/// graph: its degrees, nonzero Laplacian eigenvalues, and part degrees.
pub fn conjecture65_from_graph(g: &BipartiteGraph) -> Result<BoundReport> {
    if !g.is_connected() || g.vertex_count() < 2 {
        return Err(Error::Disconnected);
    }
    let mut spectrum = laplacian_spectrum::<f64>(&g.to_graph());
    spectrum.pop();
    let a = Partition::from_unsorted(g.row_degrees());
    let b = Partition::from_unsorted(g.col_degrees());
    let d = Partition::from_unsorted(g.row_degrees().into_iter().chain(g.col_degrees()));
    let mut r = conjecture65_check(&d, &spectrum, &a, &b)?;
    let t = tau(&g.to_graph())?;
    r.notes.insert("tau".into(), json!(t.to_string()));
    Ok(r)
}

pub const BOUND_NAMES: [&str; 6] = ["bozkurt", "venkataramana", "grone-merris", "hermitian", "eq3", "conjecture65"];

/// Runs the named check. Unknown names are an error.
pub fn check_bound(g: &BipartiteGraph, name: &str) -> Result<BoundReport> {
    Ok(match name {
        "bozkurt" => bozkurt_check(g),
        "venkataramana" => venkataramana_check(g),
        "grone-merris" => grone_merris_check(&g.to_graph()),
        "hermitian" => hermitian_majorization_check(&g.to_graph()),
        "eq3" => eq3_chain_check(g),
        "conjecture65" => conjecture65_from_graph(g)?,
        other => {
            return Err(Error::Precondition(format!(
                "unknown bound {other:?}; expected one of {}",
                BOUND_NAMES.join(", ")
            )))
        }
    })
}

/// Every applicable check; the sequence instance is skipped for disconnected graphs.
pub fn check_all(g: &BipartiteGraph) -> Vec<BoundReport> {
    BOUND_NAMES.iter().filter_map(|name| check_bound(g, name).ok()).collect()
}
