//! Floating-point spectra of bipartite graphs and the spectral bound checks.
//!
//! Normalized-Laplacian eigenvalues are reported nonincreasing. The
//! density-product checks (`conj59_check`, `lemma510_check`) index the
//! positive eigenvalues in ascending order, `0 = μ_0 < μ_1 ≤ … ≤ μ_{n-1}`,
//! so that `μ_{n-1} = 2` for a bipartite graph is the one left out.

mod jacobi;

pub use jacobi::{symmetric_eigen, SymmetricEigen, MAX_SWEEPS, OFF_DIAGONAL_TOL};

use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::graphs::{BipartiteGraph, Graph};
use crate::scalar::Real;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

/// Default absolute tolerance for floating comparisons in reports.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Tolerance for the `λ_max ≤ √e` check.
pub const SQRT_EDGE_TOL: f64 = 1e-8;

/// Gram matrix `B Bᵀ` of the biadjacency matrix.
pub fn gram<F: Real>(g: &BipartiteGraph) -> Matrix<F> {
    Matrix::from_fn(g.m(), g.m(), |i, j| {
        F::from_u32((g.row(i) & g.row(j)).count_ones()).unwrap()
    })
}

/// Largest adjacency eigenvalue, via the largest eigenvalue of `B Bᵀ`.
pub fn spectral_radius<F: Real>(g: &BipartiteGraph) -> F {
    if g.edge_count() == 0 {
        return F::zero();
    }
    let e = symmetric_eigen(&gram::<F>(g)).expect("Gram matrix is symmetric");
    e.values[0].max(F::zero()).sqrt()
}

/// Eigenvalues (nonincreasing) plus the worst eigen-residual.
pub fn spectrum_of<F: Real>(a: &Matrix<F>) -> Result<(Vec<F>, F)> {
    let e = symmetric_eigen(a)?;
    let r = e.residual(a);
    Ok((e.values, r))
}

pub fn adjacency_spectrum<F: Real>(g: &Graph) -> Vec<F> {
    spectrum_of(&g.adjacency::<F>()).expect("adjacency is symmetric").0
}

pub fn laplacian_spectrum<F: Real>(g: &Graph) -> Vec<F> {
    let l = g.laplacian().map(|&x| F::from_i64(x).unwrap());
    spectrum_of(&l).expect("Laplacian is symmetric").0
}

/// Normalized-Laplacian eigenvalues, nonincreasing, for a connected graph.
pub fn normalized_spectrum<F: Real>(g: &Graph) -> Result<Vec<F>> {
    let k = g.normalized_laplacian::<F>()?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(spectrum_of(&k)?.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SqrtEdgeBound {
    #[serde(serialize_with = "crate::report::ser_f64")]
    pub lhs: f64,
    #[serde(serialize_with = "crate::report::ser_f64")]
    pub rhs: f64,
    pub tight: bool,
    pub holds: bool,
    pub tolerance: f64,
}

/// `λ_max(G) ≤ √e(G)`, equality exactly for complete bipartite graphs.
pub fn sqrt_edge_bound_check(g: &BipartiteGraph) -> SqrtEdgeBound {
    let lhs = spectral_radius::<f64>(g);
    let rhs = (g.edge_count() as f64).sqrt();
    SqrtEdgeBound {
        lhs,
        rhs,
        tight: (lhs - rhs).abs() <= SQRT_EDGE_TOL,
        holds: lhs <= rhs + SQRT_EDGE_TOL,
        tolerance: SQRT_EDGE_TOL,
    }
}

fn require_spectrum(g: &BipartiteGraph) -> Result<Vec<f64>> {
    if g.vertex_count() < 3 {
        return Err(Error::Precondition("need at least 3 vertices".into()));
    }
    let mut mu = normalized_spectrum::<f64>(&g.to_graph())?;
    mu.reverse();
    Ok(mu)
}

fn rational_to_f64(r: &BigRational) -> f64 {
    // round-to-nearest by the float conversion of numerator and denominator
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityProduct {
    #[serde(serialize_with = "crate::report::ser_f64")]
    pub product: f64,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub rho: BigRational,
    /// `product ≤ ρ + tolerance`.
    pub holds: bool,
    pub tolerance: f64,
}

/// Product of the positive normalized eigenvalues other than the largest,
/// compared against the bipartite density.
pub fn conj59_check(g: &BipartiteGraph) -> Result<DensityProduct> {
    let asc = require_spectrum(g)?;
    let n = asc.len();
    let product: f64 = asc[1..n - 1].iter().product();
    let rho = g.density();
    Ok(DensityProduct {
        product,
        holds: product <= rational_to_f64(&rho) + DEFAULT_TOL,
        rho,
        tolerance: DEFAULT_TOL,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma510 {
    pub k: usize,
    #[serde(serialize_with = "crate::report::ser_f64")]
    pub lhs: f64,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub rho: BigRational,
    /// The product is at most the density, so the Ferrers bound follows.
    pub sufficient: bool,
}

/// `∏_{i=1..k} μ_i (2 − μ_i) ≤ ρ(G)` over the `k` smallest positive eigenvalues.
pub fn lemma510_check(g: &BipartiteGraph, k: usize) -> Result<Lemma510> {
    let asc = require_spectrum(g)?;
    let n = asc.len();
    let kmax = (n - 1) / 2;
    if k == 0 || k > kmax {
        return Err(Error::Precondition(format!("k = {k} outside 1..={kmax}")));
    }
    let lhs: f64 = asc[1..=k].iter().map(|&m| m * (2.0 - m)).product();
    let rho = g.density();
    Ok(Lemma510 {
        k,
        lhs,
        sufficient: lhs <= rational_to_f64(&rho) + DEFAULT_TOL,
        rho,
    })
}

/// Density at least 0.544 and a cut vertex of degree exactly 2.
pub fn thm511_hypothesis(g: &BipartiteGraph) -> bool {
    let threshold = BigRational::new(544.into(), 1000.into());
    if g.density() < threshold {
        return false;
    }
    let h = g.to_graph();
    (0..h.vertex_count()).any(|v| h.degree(v) == 2 && h.is_cut_vertex(v))
}

/// Everything the `spectral` subcommand prints for one graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    #[serde(serialize_with = "crate::report::ser_f64")]
    pub lambda_max: f64,
    #[serde(serialize_with = "crate::report::ser_f64_vec")]
    pub laplacian_spectrum: Vec<f64>,
    #[serde(serialize_with = "crate::report::ser_f64_vec")]
    pub normalized_spectrum: Vec<f64>,
    #[serde(serialize_with = "crate::report::ser_f64")]
    pub residual: f64,
    pub sqrt_edge_bound: SqrtEdgeBound,
    pub conj59: Option<DensityProduct>,
    pub lemma510: Vec<Lemma510>,
    pub thm511_hypothesis: bool,
}

pub fn spectrum_report(g: &BipartiteGraph) -> SpectrumReport {
    let graph = g.to_graph();
    let l = graph.laplacian().map(|&x| x as f64);
    let (lap, r1) = spectrum_of(&l).expect("Laplacian is symmetric");
    let (norm, r2) = match graph.normalized_laplacian::<f64>() {
        Ok(k) if graph.is_connected() => spectrum_of(&k).expect("symmetric"),
        _ => (Vec::new(), 0.0),
    };
    let gm = gram::<f64>(g);
    let (_, r3) = spectrum_of(&gm).expect("Gram matrix is symmetric");
    let n = g.vertex_count();
    let lemma510 = if norm.is_empty() || n < 3 {
        Vec::new()
    } else {
        (1..=(n - 1) / 2).filter_map(|k| lemma510_check(g, k).ok()).collect()
    };
    SpectrumReport {
        lambda_max: spectral_radius(g),
        laplacian_spectrum: lap,
        normalized_spectrum: norm,
        residual: r1.max(r2).max(r3),
        sqrt_edge_bound: sqrt_edge_bound_check(g),
        conj59: conj59_check(g).ok(),
        lemma510,
        thm511_hypothesis: thm511_hypothesis(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::ferrers_from_partition;
    use crate::Partition;

    fn ferrers(s: &str, n: usize) -> BipartiteGraph {
        ferrers_from_partition(&s.parse::<Partition>().unwrap(), n).unwrap()
    }

    #[test]
    fn worked_example_radii() {
        // K_{3,3} plus a pendant column, and K_{2,4} plus a degree-2 row.
        let g2 = ferrers("4,3,3", 4);
        let g1 = ferrers("4,4,2", 4);
        assert!((spectral_radius::<f64>(&g2) - 3.0592).abs() < 5e-4);
        assert!((spectral_radius::<f64>(&g1) - 3.0204).abs() < 5e-4);
        // closed forms: λ² = 5 + √19 and 5 + √17
        assert!((spectral_radius::<f64>(&g2) - (5.0 + 19f64.sqrt()).sqrt()).abs() < 1e-12);
        assert!((spectral_radius::<f64>(&g1) - (5.0 + 17f64.sqrt()).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn complete_bipartite_radius() {
        for p in 1..=5 {
            for q in 1..=5 {
                let k = BipartiteGraph::complete(p, q).unwrap();
                let r: f64 = spectral_radius(&k);
                assert!((r - ((p * q) as f64).sqrt()).abs() < 1e-10);
                assert!(sqrt_edge_bound_check(&k).tight);
            }
        }
        let r32: f32 = spectral_radius(&BipartiteGraph::complete(2, 8).unwrap());
        assert!((r32 - 4.0).abs() < 1e-5);
    }

    #[test]
    fn sqrt_edge_examples() {
        let p3 = BipartiteGraph::complete(1, 2).unwrap();
        let c = sqrt_edge_bound_check(&p3);
        assert!(c.tight && c.holds);
        let c6 = BipartiteGraph::from_edges(3, 3, &[(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)]).unwrap();
        let c = sqrt_edge_bound_check(&c6);
        assert!((c.lhs - 2.0).abs() < 1e-12);
        assert!(!c.tight && c.holds);
        assert_eq!(spectral_radius::<f64>(&BipartiteGraph::new(2, 2).unwrap()), 0.0);
    }

    #[test]
    fn normalized_spectrum_examples() {
        let k2 = Graph::path(2);
        let s: Vec<f64> = normalized_spectrum(&k2).unwrap();
        assert!((s[0] - 2.0).abs() < 1e-12 && s[1].abs() < 1e-12);
        let k3: Vec<f64> = normalized_spectrum(&Graph::complete(3)).unwrap();
        assert!((k3[0] - 1.5).abs() < 1e-12 && (k3[1] - 1.5).abs() < 1e-12 && k3[2].abs() < 1e-12);
        let p3: Vec<f64> = normalized_spectrum(&Graph::path(3)).unwrap();
        for (got, want) in p3.iter().zip([2.0, 1.0, 0.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        let c5: Vec<f64> = normalized_spectrum(&Graph::cycle(5)).unwrap();
        assert!(c5[0] < 2.0 - 1e-3);
        assert_eq!(
            normalized_spectrum::<f64>(&Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap()),
            Err(Error::Disconnected)
        );
        assert!(normalized_spectrum::<f64>(&Graph::from_edges(3, &[(0, 1)]).unwrap()).is_err());
    }

    #[test]
    fn conj59_examples() {
        let k22 = BipartiteGraph::complete(2, 2).unwrap();
        let c = conj59_check(&k22).unwrap();
        assert!((c.product - 1.0).abs() < 1e-9 && c.holds);
        assert!(conj59_check(&ferrers("3,3,2,1", 3)).unwrap().holds);
        assert!(conj59_check(&BipartiteGraph::complete(1, 1).unwrap()).is_err());
    }

    #[test]
    fn lemma510_examples() {
        let k22 = BipartiteGraph::complete(2, 2).unwrap();
        let l = lemma510_check(&k22, 1).unwrap();
        // 4-cycle: (2, 1, 1, 0); smallest positive is 1, 1·(2−1) = 1 = ρ
        assert!((l.lhs - 1.0).abs() < 1e-9 && l.sufficient);
        assert!(lemma510_check(&k22, 2).is_err());
        assert!(lemma510_check(&k22, 0).is_err());
    }

    #[test]
    fn thm511_examples() {
        assert!(thm511_hypothesis(&BipartiteGraph::complete(1, 2).unwrap()));
        assert!(!thm511_hypothesis(&BipartiteGraph::complete(2, 2).unwrap()));
        assert!(!thm511_hypothesis(&ferrers("3,3,2,1", 3)));
    }

    #[test]
    fn report_is_complete() {
        let r = spectrum_report(&ferrers("3,3,2,1", 3));
        assert_eq!(r.laplacian_spectrum.len(), 7);
        assert!((r.laplacian_spectrum.iter().sum::<f64>() - 18.0).abs() < 1e-8);
        assert!((r.normalized_spectrum[0] - 2.0).abs() < 1e-9);
        assert!(r.residual < 1e-9);
        assert_eq!(r.lemma510.len(), 3);
    }
}
