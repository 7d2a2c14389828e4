//! Spanning-tree counting (Matrix-Tree), explicit enumeration, and the
//! weighted spanning-tree polynomial of a Ferrers graph.
//!
//! Indeterminates are indexed by vertex in the bipartite numbering: slot `i`
//! (`0 <= i < m`) carries `x_{i+1}` for `u_{i+1}`, slot `m + j` carries
//! `y_{j+1}` for `v_{j+1}`. In this labelling the closed form reads
//!
//! ```text
//! Σ(G) = x_1⋯x_m · y_1⋯y_n · ∏_{i=2..m} (y_1 + ⋯ + y_{λ_i}) · ∏_{j=2..n} (x_1 + ⋯ + x_{λ'_j})
//! ```
//!
//! i.e. the first (full) row and first (full) column contribute no factor.

mod poly;

pub use poly::MultiPoly;

use crate::error::{Error, Result};
use crate::exactla::{bareiss_det, Matrix};
use crate::graphs::{ferrers_invariant, BipartiteGraph, Graph};
use crate::partitions::Partition;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

pub type IntPoly = MultiPoly<BigInt>;

/// Default cap on the number of enumerated spanning trees.
pub const DEFAULT_TREE_BUDGET: u64 = 1_000_000;

/// Largest order for which the machine-integer Bareiss path cannot overflow
/// (every intermediate is a minor bounded by Hadamard's inequality).
const SMALL_ORDER: usize = 14;

/// Number of spanning trees: the determinant of the Laplacian with the first
/// row and column removed.
pub fn tau(g: &Graph) -> Result<BigInt> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::Precondition("graph has no vertices".into()));
    }
    let reduced = g.laplacian().minor(&[0], &[0]);
    if n - 1 <= SMALL_ORDER {
        let m: Matrix<i128> = reduced.map(|&x| x as i128);
        return Ok(BigInt::from(bareiss_det(&m)?));
    }
    bareiss_det(&reduced.map(|&x| BigInt::from(x)))
}

pub fn tau_bipartite(g: &BipartiteGraph) -> BigInt {
    tau(&g.to_graph()).expect("bipartite graphs are nonempty")
}

/// Every spanning tree, as sorted index lists into `g.edges()`, in
/// lexicographic order. Branches on each edge (contract it into the tree, or
/// delete it) and prunes deletions that disconnect the remaining graph.
pub fn enumerate_spanning_trees(g: &Graph, budget: u64) -> Result<Vec<Vec<usize>>> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::Precondition("graph has no vertices".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let edges = g.edges();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(n - 1);
    let comp: Vec<usize> = (0..n).collect();
    Enumerator {
        edges: &edges,
        n,
        budget,
        out: &mut out,
    }
    .run(0, &comp, &mut chosen)?;
    out.sort();
    Ok(out)
}

struct Enumerator<'a> {
    edges: &'a [(usize, usize)],
    n: usize,
    budget: u64,
    out: &'a mut Vec<Vec<usize>>,
}

impl Enumerator<'_> {
    fn run(&mut self, k: usize, comp: &[usize], chosen: &mut Vec<usize>) -> Result<()> {
        if chosen.len() + 1 == self.n {
            if self.out.len() as u64 >= self.budget {
                return Err(Error::BudgetExceeded {
                    what: "spanning trees".into(),
                    limit: self.budget,
                    progress: self.out.len() as u64,
                });
            }
            self.out.push(chosen.clone());
            return Ok(());
        }
        if k == self.edges.len() {
            return Ok(());
        }
        let (a, b) = self.edges[k];
        if comp[a] != comp[b] {
            // contract
            let (keep, drop) = (comp[a], comp[b]);
            let merged: Vec<usize> = comp.iter().map(|&c| if c == drop { keep } else { c }).collect();
            chosen.push(k);
            self.run(k + 1, &merged, chosen)?;
            chosen.pop();
        }
        // delete, if the contracted components stay connected without edge k
        if self.connected_without(k, comp) {
            self.run(k + 1, comp, chosen)?;
        }
        Ok(())
    }

    fn connected_without(&self, k: usize, comp: &[usize]) -> bool {
        let mut label: Vec<usize> = comp.to_vec();
        let find = |label: &mut Vec<usize>, mut x: usize| {
            while label[x] != x {
                label[x] = label[label[x]];
                x = label[x];
            }
            x
        };
        // comp entries already point at component representatives
        for &(a, b) in &self.edges[k + 1..] {
            let ra = find(&mut label, comp[a]);
            let rb = find(&mut label, comp[b]);
            if ra != rb {
                label[ra] = rb;
            }
        }
        let root = find(&mut label, comp[0]);
        (0..self.n).all(|v| find(&mut label, comp[v]) == root)
    }
}

/// `σ(T)` summed over every spanning tree, by explicit enumeration.
pub fn sigma_bruteforce(g: &BipartiteGraph, budget: u64) -> Result<IntPoly> {
    let graph = g.to_graph();
    let edges = graph.edges();
    let trees = enumerate_spanning_trees(&graph, budget)?;
    let arity = g.vertex_count();
    let mut sigma = IntPoly::zero(arity);
    for t in trees {
        let mut e = vec![0u32; arity];
        for k in t {
            let (a, b) = edges[k];
            e[a] += 1;
            e[b] += 1;
        }
        sigma.add_term(e, BigInt::one());
    }
    Ok(sigma)
}

/// Closed-form weighted tree polynomial of the connected Ferrers graph with
/// row partition `lambda` and column partition `lambda_dual`.
pub fn sigma_formula(lambda: &Partition, lambda_dual: &Partition) -> Result<IntPoly> {
    if lambda.is_empty() {
        return Err(Error::InvalidPartition("empty partition".into()));
    }
    if lambda.conjugate() != *lambda_dual {
        return Err(Error::Precondition(format!(
            "{lambda_dual} is not the conjugate of {lambda}"
        )));
    }
    let m = lambda.len();
    let n = lambda_dual.len();
    let arity = m + n;
    let mut prod = IntPoly::monomial(vec![1; arity], BigInt::one());
    let sum_of = |slots: std::ops::Range<usize>| {
        slots.fold(IntPoly::zero(arity), |acc, k| &acc + &IntPoly::var(arity, k))
    };
    for &part in &lambda.parts()[1..] {
        prod = &prod * &sum_of(m..m + part as usize);
    }
    for &part in &lambda_dual.parts()[1..] {
        prod = &prod * &sum_of(0..part as usize);
    }
    Ok(prod)
}

/// Tree count, Ferrers invariant and the bound comparison for one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeReport {
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub tau: BigInt,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub ferrers_invariant: BigRational,
    pub ferrers_good: bool,
}

impl TreeReport {
    pub fn is_tight(&self) -> bool {
        BigRational::from_integer(self.tau.clone()) == self.ferrers_invariant
    }
}

pub fn tree_report(g: &BipartiteGraph) -> TreeReport {
    let tau = tau_bipartite(g);
    let f = ferrers_invariant(g);
    let ferrers_good = BigRational::from_integer(tau.clone()) <= f;
    TreeReport {
        tau,
        ferrers_invariant: f,
        ferrers_good,
    }
}

/// `(exponents, coefficient)` pairs in sorted exponent order.
pub fn term_list(p: &IntPoly) -> Vec<(Vec<u32>, String)> {
    p.terms().map(|(e, c)| (e.to_vec(), c.to_string())).collect()
}

/// Counts trees by brute force over all `(n-1)`-edge subsets; test oracle only.
#[doc(hidden)]
pub fn tau_by_subsets(g: &Graph) -> BigInt {
    let n = g.vertex_count();
    let edges = g.edges();
    if n <= 1 {
        return BigInt::one();
    }
    let mut count = BigInt::zero();
    let mut idx: Vec<usize> = (0..n - 1).collect();
    if edges.len() < n - 1 {
        return count;
    }
    loop {
        let sub: Vec<(usize, usize)> = idx.iter().map(|&k| edges[k]).collect();
        if Graph::from_edges(n, &sub).map(|t| t.is_connected()).unwrap_or(false) {
            count += 1;
        }
        // next combination
        let mut i = idx.len();
        loop {
            if i == 0 {
                return count;
            }
            i -= 1;
            if idx[i] < edges.len() - (idx.len() - i) {
                break;
            }
        }
        idx[i] += 1;
        for k in i + 1..idx.len() {
            idx[k] = idx[k - 1] + 1;
        }
    }
}
