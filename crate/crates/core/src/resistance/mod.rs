//! Exact resistance distance and the edge-deletion equivalence checks.
//!
//! Vertices are 0-based in the API; serialized reports use 1-based labels.

mod ferrers;

pub use ferrers::{induction_identity_check, lemma81_verify, InductionReport, Lemma81Report};

use crate::error::{Error, Result};
use crate::exactla::{bareiss_det, bordered_ginverse, moore_penrose_laplacian, GInverse, GInverseKind};
use crate::graphs::Graph;
use crate::trees::tau;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use std::collections::HashMap;

/// Incidence vector of an oriented edge: `+1` at `plus`, `−1` at `minus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IncidenceVector {
    pub n: usize,
    pub plus: usize,
    pub minus: usize,
}

impl IncidenceVector {
    /// Orientation convention: `+1` at the lower-numbered endpoint.
    pub fn for_edge(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::Precondition("edge endpoints must differ".into()));
        }
        if a.max(b) >= n {
            return Err(Error::InvalidVertex {
                vertex: a.max(b),
                count: n,
            });
        }
        Ok(IncidenceVector {
            n,
            plus: a.min(b),
            minus: a.max(b),
        })
    }

    pub fn to_vec(&self) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.n];
        v[self.plus] = BigRational::one();
        v[self.minus] = -BigRational::one();
        v
    }
}

fn int_det(m: &crate::exactla::Matrix<i64>) -> BigInt {
    let big = m.map(|&x| BigInt::from(x));
    bareiss_det(&big).expect("square minor")
}

fn check_pair(g: &Graph, i: usize, j: usize) -> Result<()> {
    let n = g.vertex_count();
    for v in [i, j] {
        if v >= n {
            return Err(Error::InvalidVertex { vertex: v, count: n });
        }
    }
    if i == j {
        return Err(Error::Precondition("resistance needs two distinct vertices".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// `det L(i,j) / det L(i)`: both rows and columns `i, j` removed on top,
/// row and column `i` removed below.
pub fn resistance_by_minors(g: &Graph, i: usize, j: usize) -> Result<BigRational> {
    check_pair(g, i, j)?;
    let l = g.laplacian();
    let num = int_det(&l.minor(&[i, j], &[i, j]));
    let den = int_det(&l.minor(&[i], &[i]));
    Ok(BigRational::new(num, den))
}

/// Exact resistance distance, computed from the Moore-Penrose inverse and
/// cross-checked against the ratio of Laplacian minors.
pub fn resistance(g: &Graph, i: usize, j: usize) -> Result<BigRational> {
    check_pair(g, i, j)?;
    let mp = moore_penrose_laplacian(&g.laplacian_rational())?;
    let r = mp.resistance(i, j);
    let by_minors = resistance_by_minors(g, i, j)?;
    if r != by_minors {
        return Err(Error::Inconsistent(format!(
            "resistance {r} from L+ but {by_minors} from minors"
        )));
    }
    Ok(r)
}

/// Resistance between `i` and `j` inside their common component; other
/// components do not carry current and are ignored.
pub fn resistance_in_component(g: &Graph, i: usize, j: usize) -> Result<BigRational> {
    let n = g.vertex_count();
    if i >= n {
        return Err(Error::InvalidVertex { vertex: i, count: n });
    }
    let comp = g.reach(i, 0);
    if j >= n || comp >> j & 1 == 0 {
        return Err(Error::Disconnected);
    }
    let keep: Vec<usize> = (0..n).filter(|&v| comp >> v & 1 == 1).collect();
    let pos = |v: usize| keep.iter().position(|&x| x == v).expect("vertex in component");
    let edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(a, _)| comp >> a & 1 == 1)
        .map(|(a, b)| (pos(a), pos(b)))
        .collect();
    let h = Graph::from_edges(keep.len(), &edges)?;
    resistance(&h, pos(i), pos(j))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Monotonicity {
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub before: BigRational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub after: BigRational,
    pub strict: bool,
}

/// Resistance between `i` and `j` before and after deleting the non-cut edge `f`.
/// A decrease is reported as an inconsistency.
pub fn edge_deletion_monotonicity(g: &Graph, f: (usize, usize), i: usize, j: usize) -> Result<Monotonicity> {
    let h = g.without_edge(f.0, f.1)?;
    if !h.is_connected() {
        return Err(Error::Precondition(format!("{{{}, {}}} is a cut edge", f.0, f.1)));
    }
    let before = resistance(g, i, j)?;
    let after = resistance(&h, i, j)?;
    if after < before {
        return Err(Error::Inconsistent(format!(
            "resistance fell from {before} to {after} after deleting an edge"
        )));
    }
    Ok(Monotonicity {
        strict: after > before,
        before,
        after,
    })
}

fn ser_label<S: Serializer>(v: &usize, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(*v as u64 + 1)
}

fn ser_edge<S: Serializer>(e: &(usize, usize), s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq([e.0 + 1, e.1 + 1])
}

/// One coordinate comparison behind a g-inverse condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub condition: &'static str,
    pub ginverse: GInverseKind,
    #[serde(serialize_with = "ser_label")]
    pub first: usize,
    #[serde(serialize_with = "ser_label")]
    pub second: usize,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub first_value: BigRational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub second_value: BigRational,
}

impl Witness {
    pub fn equal(&self) -> bool {
        self.first_value == self.second_value
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub name: &'static str,
    pub holds: bool,
}

pub const CONDITION_NAMES: [&str; 11] = ["i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x", "xi"];

/// The eleven conditions for one edge pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    #[serde(serialize_with = "ser_edge")]
    pub e: (usize, usize),
    #[serde(serialize_with = "ser_edge")]
    pub f: (usize, usize),
    pub conditions: Vec<Condition>,
    pub all_agree: bool,
    /// Neither `r(i,j)` after deleting `f` nor `r(k,l)` after deleting `e` decreased.
    pub monotone: bool,
    pub witnesses: Vec<Witness>,
}

impl EquivalenceReport {
    pub fn holds(&self, name: &str) -> bool {
        self.conditions.iter().any(|c| c.name == name && c.holds)
    }

    /// Common truth value when all conditions agree.
    pub fn verdict(&self) -> Option<bool> {
        self.all_agree.then(|| self.conditions[0].holds)
    }
}

/// Per-graph cache of Laplacian inverses and tree counts for checking many
/// edge pairs of one graph.
pub struct EdgePairChecker {
    g: Graph,
    tau_g: BigInt,
    mp: HashMap<Option<(usize, usize)>, GInverse>,
    bordered: HashMap<(Option<(usize, usize)>, usize), GInverse>,
    taus: HashMap<Vec<(usize, usize)>, BigInt>,
}

impl EdgePairChecker {
    pub fn new(g: &Graph) -> Result<Self> {
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(EdgePairChecker {
            tau_g: tau(g)?,
            g: g.clone(),
            mp: HashMap::new(),
            bordered: HashMap::new(),
            taus: HashMap::new(),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.g
    }

    fn variant(&self, removed: Option<(usize, usize)>) -> Result<Graph> {
        match removed {
            None => Ok(self.g.clone()),
            Some((a, b)) => self.g.without_edge(a, b),
        }
    }

    fn mp(&mut self, removed: Option<(usize, usize)>) -> Result<&GInverse> {
        if !self.mp.contains_key(&removed) {
            let l = self.variant(removed)?.laplacian_rational();
            self.mp.insert(removed, moore_penrose_laplacian(&l)?);
        }
        Ok(&self.mp[&removed])
    }

    fn bordered(&mut self, removed: Option<(usize, usize)>, pivot: usize) -> Result<&GInverse> {
        let key = (removed, pivot);
        if !self.bordered.contains_key(&key) {
            let l = self.variant(removed)?.laplacian_rational();
            self.bordered.insert(key, bordered_ginverse(&l, pivot)?);
        }
        Ok(&self.bordered[&key])
    }

    fn tau_without(&mut self, removed: &[(usize, usize)]) -> Result<BigInt> {
        let mut key = removed.to_vec();
        key.sort();
        if let Some(t) = self.taus.get(&key) {
            return Ok(t.clone());
        }
        let mut h = self.g.clone();
        for &(a, b) in &key {
            h = h.without_edge(a, b)?;
        }
        let t = tau(&h)?;
        self.taus.insert(key, t.clone());
        Ok(t)
    }

    fn validate(&self, e: (usize, usize), f: (usize, usize)) -> Result<((usize, usize), (usize, usize))> {
        let n = self.g.vertex_count();
        if n < 4 {
            return Err(Error::Precondition(format!("need at least 4 vertices, graph has {n}")));
        }
        let norm = |x: (usize, usize)| (x.0.min(x.1), x.0.max(x.1));
        let (e, f) = (norm(e), norm(f));
        for (name, x) in [("e", e), ("f", f)] {
            if !self.g.has_edge(x.0, x.1) {
                return Err(Error::Precondition(format!("{name} = {{{}, {}}} is not an edge", x.0 + 1, x.1 + 1)));
            }
        }
        if e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1 {
            return Err(Error::Precondition("e and f share a vertex".into()));
        }
        for (name, x) in [("e", e), ("f", f)] {
            if self.g.is_cut_edge(x.0, x.1) {
                return Err(Error::Precondition(format!("G minus {name} is disconnected")));
            }
        }
        Ok((e, f))
    }

    /// Evaluates all eleven conditions for the disjoint edges `e` and `f`.
    pub fn check(&mut self, e: (usize, usize), f: (usize, usize)) -> Result<EquivalenceReport> {
        let (e, f) = self.validate(e, f)?;
        let n = self.g.vertex_count();
        let (i, j) = e;
        let (k, l) = f;
        let pivot = (0..n).find(|v| ![i, j, k, l].contains(v)).unwrap_or(i);
        let xe = IncidenceVector::for_edge(n, i, j)?.to_vec();
        let xf = IncidenceVector::for_edge(n, k, l)?.to_vec();

        // (i)-(iii)
        let r_g_ij = self.mp(None)?.resistance(i, j);
        let r_gf_ij = self.mp(Some(f))?.resistance(i, j);
        let r_g_kl = self.mp(None)?.resistance(k, l);
        let r_ge_kl = self.mp(Some(e))?.resistance(k, l);
        let c1 = r_g_ij == r_gf_ij;
        let c2 = r_g_kl == r_ge_kl;
        let t_e = self.tau_without(&[e])?;
        let t_f = self.tau_without(&[f])?;
        let t_ef = self.tau_without(&[e, f])?;
        let c3 = &t_e * &t_f == &self.tau_g * &t_ef;

        // cross-check the resistances against minors
        for (graph, (a, b), r) in [
            (None, (i, j), &r_g_ij),
            (Some(f), (i, j), &r_gf_ij),
            (None, (k, l), &r_g_kl),
            (Some(e), (k, l), &r_ge_kl),
        ] {
            let by_minors = resistance_by_minors(&self.variant(graph)?, a, b)?;
            if by_minors != *r {
                return Err(Error::Inconsistent(format!("resistance {r} vs minors {by_minors}")));
            }
        }

        let mut witnesses = Vec::new();
        let mut coords = |name: &'static str, gi: &GInverse, x: &[BigRational], a: usize, b: usize| -> Result<bool> {
            let y = gi.apply(x)?;
            let w = Witness {
                condition: name,
                ginverse: gi.kind(),
                first: a,
                second: b,
                first_value: y[a].clone(),
                second_value: y[b].clone(),
            };
            let eq = w.equal();
            witnesses.push(w);
            Ok(eq)
        };

        let lp = self.mp(None)?.clone();
        let lb = self.bordered(None, pivot)?.clone();
        let lfp = self.mp(Some(f))?.clone();
        let lfb = self.bordered(Some(f), pivot)?.clone();
        let lep = self.mp(Some(e))?.clone();
        let leb = self.bordered(Some(e), pivot)?.clone();

        let c4 = coords("iv", &lp, &xf, i, j)?;
        let c5 = coords("v", &lp, &xf, i, j)? & coords("v", &lb, &xf, i, j)?;
        let c6 = coords("vi", &lfp, &xf, i, j)?;
        let c7 = coords("vii", &lfp, &xf, i, j)? & coords("vii", &lfb, &xf, i, j)?;
        let c8 = coords("viii", &lp, &xe, k, l)?;
        let c9 = coords("ix", &lp, &xe, k, l)? & coords("ix", &lb, &xe, k, l)?;
        let c10 = coords("x", &lep, &xe, k, l)?;
        let c11 = coords("xi", &lep, &xe, k, l)? & coords("xi", &leb, &xe, k, l)?;

        let values = [c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11];
        let conditions = CONDITION_NAMES
            .iter()
            .zip(values)
            .map(|(&name, holds)| Condition { name, holds })
            .collect();
        Ok(EquivalenceReport {
            e,
            f,
            conditions,
            all_agree: values.iter().all(|&v| v == values[0]),
            monotone: r_gf_ij >= r_g_ij && r_ge_kl >= r_g_kl,
            witnesses,
        })
    }

    /// Every ordered pair of vertex-disjoint edges whose single deletions keep
    /// the graph connected.
    pub fn admissible_pairs(&self) -> Vec<((usize, usize), (usize, usize))> {
        let good: Vec<(usize, usize)> = self
            .g
            .edges()
            .into_iter()
            .filter(|&(a, b)| !self.g.is_cut_edge(a, b))
            .collect();
        let mut out = Vec::new();
        for &e in &good {
            for &f in &good {
                if e.0 != f.0 && e.0 != f.1 && e.1 != f.0 && e.1 != f.1 {
                    out.push((e, f));
                }
            }
        }
        out
    }
}

/// Checks the eleven equivalent conditions for edges `e`, `f` of `g`.
pub fn theorem71_check(g: &Graph, e: (usize, usize), f: (usize, usize)) -> Result<EquivalenceReport> {
    EdgePairChecker::new(g)
        .map_err(|_| Error::Precondition("graph must be connected".into()))?
        .check(e, f)
}

fn ser_graph<S: Serializer>(g: &Graph, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(g.edges().into_iter().map(|(a, b)| [a + 1, b + 1]))
}

/// An edge pair whose conditions disagree or whose resistances decreased.
#[derive(Debug, Clone, Serialize)]
pub struct ScanFailure {
    pub vertices: usize,
    #[serde(serialize_with = "ser_graph")]
    pub edges: Graph,
    pub report: EquivalenceReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceScan {
    pub max_n: usize,
    pub graphs: u64,
    pub pairs: u64,
    pub pairs_all_true: u64,
    pub pairs_all_false: u64,
    pub failures: Vec<ScanFailure>,
}

impl EquivalenceScan {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every admissible ordered edge pair of every connected graph on at
/// most `max_n` vertices. Graphs are processed in parallel on the current
/// rayon pool; results keep canonical order.
pub fn theorem71_scan(max_n: usize) -> Result<EquivalenceScan> {
    use rayon::prelude::*;
    let graphs = crate::search::connected_graphs(max_n)?;
    let per_graph: Vec<Result<(u64, u64, u64, Vec<ScanFailure>)>> = graphs
        .par_iter()
        .filter(|g| g.vertex_count() >= 4)
        .map(|g| {
            let mut checker = EdgePairChecker::new(g)?;
            let (mut pairs, mut yes, mut no) = (0, 0, 0);
            let mut failures = Vec::new();
            for (e, f) in checker.admissible_pairs() {
                let report = checker.check(e, f)?;
                pairs += 1;
                match report.verdict() {
                    Some(true) => yes += 1,
                    Some(false) => no += 1,
                    None => {}
                }
                if !report.all_agree || !report.monotone {
                    failures.push(ScanFailure {
                        vertices: g.vertex_count(),
                        edges: g.clone(),
                        report,
                    });
                }
            }
            Ok((pairs, yes, no, failures))
        })
        .collect();
    let mut scan = EquivalenceScan {
        max_n,
        graphs: graphs.len() as u64,
        pairs: 0,
        pairs_all_true: 0,
        pairs_all_false: 0,
        failures: Vec::new(),
    };
    for r in per_graph {
        let (p, y, n, f) = r?;
        scan.pairs += p;
        scan.pairs_all_true += y;
        scan.pairs_all_false += n;
        scan.failures.extend(f);
    }
    Ok(scan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::ferrers_from_partition;
    use crate::Partition;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    /// Series-parallel oracle for a cycle: two arcs of lengths `a` and `b` in parallel.
    fn cycle_resistance(a: i64, b: i64) -> BigRational {
        q(a * b, a + b)
    }

    #[test]
    fn resistance_examples() {
        assert_eq!(resistance(&Graph::path(2), 0, 1).unwrap(), q(1, 1));
        assert_eq!(resistance(&Graph::path(3), 0, 2).unwrap(), q(2, 1));
        assert_eq!(resistance(&Graph::cycle(4), 0, 1).unwrap(), cycle_resistance(1, 3));
        assert_eq!(resistance(&Graph::cycle(4), 0, 1).unwrap(), q(3, 4));
        assert_eq!(resistance(&Graph::cycle(6), 0, 2).unwrap(), cycle_resistance(2, 4));
        assert_eq!(resistance(&Graph::complete(4), 0, 1).unwrap(), q(1, 2));
        assert!(resistance(&Graph::path(3), 1, 1).is_err());
        assert_eq!(
            resistance(&Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap(), 0, 3),
            Err(Error::Disconnected)
        );
    }

    #[test]
    fn ginverse_independence() {
        let g = ferrers_from_partition(&"3,3,2,1".parse::<Partition>().unwrap(), 3).unwrap().to_graph();
        let l = g.laplacian_rational();
        let mp = moore_penrose_laplacian(&l).unwrap();
        let n = g.vertex_count();
        for pivot in 0..n {
            let b = bordered_ginverse(&l, pivot).unwrap();
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        assert_eq!(b.resistance(i, j), mp.resistance(i, j));
                    }
                }
            }
            // readoff at the pivot row
            for j in (0..n).filter(|&j| j != pivot) {
                assert_eq!(b.matrix().get(j, j).clone(), mp.resistance(pivot, j));
            }
        }
    }

    #[test]
    fn foster_sum_and_metric() {
        for g in [Graph::complete(5), Graph::cycle(6), ferrers_from_partition(&"3,2,2,1".parse().unwrap(), 3).unwrap().to_graph()] {
            let n = g.vertex_count();
            let total = g
                .edges()
                .iter()
                .fold(BigRational::zero(), |s, &(a, b)| s + resistance(&g, a, b).unwrap());
            assert_eq!(total, q(n as i64 - 1, 1));
            let mp = moore_penrose_laplacian(&g.laplacian_rational()).unwrap();
            for a in 0..n {
                for b in 0..n {
                    assert_eq!(mp.resistance(a, b), mp.resistance(b, a));
                    for c in 0..n {
                        assert!(mp.resistance(a, c) <= mp.resistance(a, b) + mp.resistance(b, c));
                    }
                }
            }
        }
    }

    #[test]
    fn monotonicity_examples() {
        let c4 = Graph::cycle(4);
        let m = edge_deletion_monotonicity(&c4, (0, 1), 0, 2).unwrap();
        assert_eq!((m.before.clone(), m.after.clone()), (q(1, 1), q(2, 1)));
        assert!(m.strict);
        let m = edge_deletion_monotonicity(&c4, (0, 1), 0, 1).unwrap();
        assert_eq!((m.before, m.after), (q(3, 4), q(3, 1)));
        let k4 = Graph::complete(4);
        let m = edge_deletion_monotonicity(&k4, (0, 1), 0, 1).unwrap();
        assert_eq!((m.before.clone(), m.after.clone()), (q(1, 2), q(1, 1)));
        assert!(m.strict);
        assert!(edge_deletion_monotonicity(&Graph::path(3), (0, 1), 0, 2).is_err());
    }

    #[test]
    fn theorem71_examples() {
        let k4 = Graph::complete(4);
        let r = theorem71_check(&k4, (0, 1), (2, 3)).unwrap();
        assert!(r.all_agree);
        assert_eq!(r.verdict(), Some(true));
        assert_eq!(r.witnesses.len(), 12);

        // 6-cycle with chord {0,3}: e = {1,2}, f = {4,5}
        let mut g = Graph::cycle(6);
        g.add_edge(0, 3).unwrap();
        let r = theorem71_check(&g, (1, 2), (4, 5)).unwrap();
        assert!(r.all_agree);
        let r2 = theorem71_check(&g, (0, 1), (3, 4)).unwrap();
        assert!(r2.all_agree);
        assert_eq!(r2.verdict(), Some(false));

        assert!(theorem71_check(&k4, (0, 1), (1, 2)).is_err());
        assert!(theorem71_check(&Graph::cycle(6), (0, 1), (3, 4)).is_ok());
        assert!(matches!(theorem71_check(&Graph::path(5), (0, 1), (2, 3)), Err(Error::Precondition(_))));
        assert!(theorem71_check(&Graph::complete(3), (0, 1), (1, 2)).is_err());
    }

    #[test]
    fn scan_small() {
        let scan = theorem71_scan(5).unwrap();
        assert!(scan.passed());
        assert!(scan.pairs > 0 && scan.pairs_all_true > 0 && scan.pairs_all_false > 0);
        assert_eq!(scan.pairs, scan.pairs_all_true + scan.pairs_all_false);
    }

    #[test]
    fn incidence_orientation() {
        let x = IncidenceVector::for_edge(4, 3, 1).unwrap();
        assert_eq!((x.plus, x.minus), (1, 3));
        assert!(IncidenceVector::for_edge(4, 2, 2).is_err());
    }
}
