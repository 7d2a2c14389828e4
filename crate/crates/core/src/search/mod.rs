//! Exhaustive searches over bipartite graph classes.

mod canon;
mod enumerate;
mod general;

pub use canon::{canonical_code, CanonicalCode, MAX_SIDE};
pub use enumerate::{enumerate_class, ClassKind, ClassSpec};
pub use general::{connected_graphs, general_canonical_code, MAX_GENERAL_VERTICES};

use crate::error::{Error, Result};
use crate::graphs::{ferrers_from_partition, ferrers_partition, is_ferrers, BipartiteGraph};
use crate::partitions::Partition;
use crate::spectral::{spectral_radius, DEFAULT_TOL};
use crate::trees::tree_report;
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use std::str::FromStr;
use std::time::Instant;

/// Resource limits for searches. Parsed from `vertices=10,pq=24,candidates=..,trees=..`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Largest vertex count for the Ferrers bound scan.
    pub vertices: usize,
    /// Largest `p q` for spectral searches.
    pub pq: usize,
    /// Labeled candidates generated per enumeration.
    pub candidates: u64,
    /// Spanning trees listed by explicit enumeration.
    pub trees: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            vertices: 10,
            pq: 24,
            candidates: 200_000_000,
            trees: crate::trees::DEFAULT_TREE_BUDGET,
        }
    }
}

impl FromStr for Budget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut b = Budget::default();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let bad = || Error::Precondition(format!("bad budget entry {item:?}"));
            let (key, value) = item.split_once('=').ok_or_else(bad)?;
            let value: u64 = value.trim().parse().map_err(|_| bad())?;
            if value == 0 {
                return Err(Error::Precondition(format!("budget {key} must be positive")));
            }
            match key.trim() {
                "vertices" => b.vertices = value as usize,
                "pq" => b.pq = value as usize,
                "candidates" => b.candidates = value,
                "trees" => b.trees = value,
                _ => return Err(bad()),
            }
        }
        Ok(b)
    }
}

fn ser_opt_f64<S: Serializer>(x: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => crate::report::ser_f64(v, s),
        None => s.serialize_none(),
    }
}

fn ser_opt_bigint<S: Serializer>(x: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => crate::report::ser_bigint(v, s),
        None => s.serialize_none(),
    }
}

fn ser_opt_rational<S: Serializer>(x: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => crate::report::ser_rational(v, s),
        None => s.serialize_none(),
    }
}

fn ser_edges<S: Serializer>(g: &BipartiteGraph, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(g.edges().into_iter().map(|(i, j)| [i + 1, j + 1]))
}

/// A graph named in a report, with whatever values the search computed.
#[derive(Debug, Clone, Serialize)]
pub struct GraphRecord {
    #[serde(serialize_with = "crate::report::ser_display")]
    pub code: CanonicalCode,
    pub m: usize,
    pub n: usize,
    #[serde(serialize_with = "ser_edges")]
    pub edges: BipartiteGraph,
    pub is_ferrers: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<Partition>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_f64")]
    pub lambda_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_bigint")]
    pub tau: Option<BigInt>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_rational")]
    pub ferrers_invariant: Option<BigRational>,
    /// A complete bipartite graph plus one vertex.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complete_plus_vertex: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl GraphRecord {
    fn new(code: CanonicalCode, g: &BipartiteGraph) -> Self {
        GraphRecord {
            m: g.m(),
            n: g.n(),
            is_ferrers: is_ferrers(g),
            partition: ferrers_partition(g),
            code,
            edges: g.clone(),
            lambda_max: None,
            tau: None,
            ferrers_invariant: None,
            complete_plus_vertex: None,
            reason: None,
        }
    }

    pub fn graph(&self) -> &BipartiteGraph {
        &self.edges
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub class: ClassSpec,
    pub checked_property: String,
    pub examined: u64,
    pub extremal: Vec<GraphRecord>,
    pub counterexamples: Vec<GraphRecord>,
    /// Largest distinct values seen, for optimization searches.
    #[serde(skip_serializing_if = "Vec::is_empty", serialize_with = "crate::report::ser_f64_vec")]
    pub top_values: Vec<f64>,
    /// Wall time in seconds; omitted unless requested so reports stay reproducible.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_f64")]
    pub elapsed_seconds: Option<f64>,
}

impl SearchReport {
    pub fn verified(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SearchOptions {
    pub budget: Budget,
    /// Record wall time in the report.
    pub timing: bool,
}

fn finish(mut report: SearchReport, start: Instant, opts: &SearchOptions) -> SearchReport {
    if opts.timing {
        report.elapsed_seconds = Some(start.elapsed().as_secs_f64());
    }
    report
}

/// Scans every connected bipartite class on at most `max_vertices` vertices
/// for `tau(G) <= F(G)`. Graphs with equality are listed as extremal; a
/// Ferrers graph without equality is also a counterexample.
pub fn verify_ferrers_bound(max_vertices: usize, opts: &SearchOptions) -> Result<SearchReport> {
    if max_vertices > opts.budget.vertices {
        return Err(Error::BudgetExceeded {
            what: "vertices".into(),
            limit: opts.budget.vertices as u64,
            progress: 0,
        });
    }
    let start = Instant::now();
    let spec = ClassSpec::all_connected_bipartite(max_vertices);
    let classes = enumerate_class(&spec, opts.budget.candidates)?;
    let records: Vec<(bool, bool, GraphRecord)> = classes
        .par_iter()
        .map(|(code, g)| {
            let t = tree_report(g);
            let tight = t.is_tight();
            let mut rec = GraphRecord::new(code.clone(), g);
            let bad_ferrers = rec.is_ferrers && !tight;
            let violated = !t.ferrers_good || bad_ferrers;
            if violated {
                rec.reason = Some(if bad_ferrers { "ferrers graph with tau != F" } else { "tau > F" }.into());
            }
            rec.tau = Some(t.tau);
            rec.ferrers_invariant = Some(t.ferrers_invariant);
            (violated, tight, rec)
        })
        .collect();
    let mut report = SearchReport {
        class: spec,
        checked_property: "tau(G) <= F(G)".into(),
        examined: records.len() as u64,
        extremal: Vec::new(),
        counterexamples: Vec::new(),
        top_values: Vec::new(),
        elapsed_seconds: None,
    };
    for (violated, tight, rec) in records {
        if violated {
            report.counterexamples.push(rec.clone());
        }
        if tight {
            report.extremal.push(rec);
        }
    }
    Ok(finish(report, start, opts))
}

/// Whether deleting one vertex leaves a complete bipartite graph with both
/// parts nonempty.
pub fn is_complete_plus_vertex(g: &BipartiteGraph) -> bool {
    let (m, n) = (g.m(), g.n());
    let full_cols = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
    let rows_complete = |skip_row: Option<usize>, cols: u64| {
        (0..m).filter(|&i| Some(i) != skip_row).all(|i| g.row(i) & cols == cols)
    };
    let drop_row = m >= 2 && (0..m).any(|r| rows_complete(Some(r), full_cols));
    let drop_col = n >= 2 && (0..n).any(|c| rows_complete(None, full_cols & !(1u64 << c)));
    drop_row || drop_col
}

struct Scored {
    code: CanonicalCode,
    graph: BipartiteGraph,
    lambda: f64,
}

fn maximize(classes: Vec<(CanonicalCode, BipartiteGraph)>) -> (Vec<Scored>, f64, Vec<f64>) {
    let scored: Vec<Scored> = classes
        .into_par_iter()
        .map(|(code, graph)| Scored {
            lambda: spectral_radius::<f64>(&graph),
            code,
            graph,
        })
        .collect();
    let best = scored.iter().map(|s| s.lambda).fold(f64::NEG_INFINITY, f64::max);
    let mut values: Vec<f64> = scored.iter().map(|s| s.lambda).collect();
    values.sort_by(|a, b| b.total_cmp(a));
    let mut top: Vec<f64> = Vec::new();
    for v in values {
        if top.last().map_or(true, |&t| t - v > DEFAULT_TOL) {
            top.push(v);
        }
        if top.len() == 5 {
            break;
        }
    }
    (scored, best, top)
}

/// Spectral-radius maximizers over subgraphs of `K_{p,q}` with `e` edges,
/// no isolated vertices, not complete bipartite. A maximizer that is not a
/// Ferrers graph, or that reaches `sqrt(e)`, is a counterexample.
pub fn spectral_search(p: usize, q: usize, e: usize, opts: &SearchOptions) -> Result<SearchReport> {
    spectral_search_in(ClassSpec::kpqe(p, q, e)?, opts)
}

/// [`spectral_search`] over an arbitrary `K(p,q,e)` spec, e.g. with
/// [`ClassSpec::connected_only`].
pub fn spectral_search_in(spec: ClassSpec, opts: &SearchOptions) -> Result<SearchReport> {
    let ClassKind::Kpqe { p, q, .. } = spec.kind else {
        return Err(Error::Precondition("spectral search needs a K(p,q,e) class".into()));
    };
    if p * q > opts.budget.pq {
        return Err(Error::BudgetExceeded {
            what: "pq".into(),
            limit: opts.budget.pq as u64,
            progress: 0,
        });
    }
    let start = Instant::now();
    let classes = enumerate_class(&spec, opts.budget.candidates)?;
    let examined = classes.len() as u64;
    let (scored, best, top) = maximize(classes);
    let mut report = SearchReport {
        class: spec,
        checked_property: "every spectral-radius maximizer is a Ferrers graph".into(),
        examined,
        extremal: Vec::new(),
        counterexamples: Vec::new(),
        top_values: top,
        elapsed_seconds: None,
    };
    for s in scored.into_iter().filter(|s| best - s.lambda <= DEFAULT_TOL) {
        let mut rec = GraphRecord::new(s.code, &s.graph);
        rec.lambda_max = Some(s.lambda);
        rec.complete_plus_vertex = Some(is_complete_plus_vertex(&s.graph));
        if !rec.is_ferrers {
            rec.reason = Some("maximizer is not a Ferrers graph".into());
            report.counterexamples.push(rec.clone());
        } else if s.lambda >= (s.graph.edge_count() as f64).sqrt() - DEFAULT_TOL {
            rec.reason = Some("maximizer reaches sqrt(e)".into());
            report.counterexamples.push(rec.clone());
        }
        report.extremal.push(rec);
    }
    Ok(finish(report, start, opts))
}

/// Spectral-radius maximizers over bipartite graphs without isolated
/// vertices whose first part has degrees `d`. The Ferrers graph with row
/// lengths `d` must be among them.
pub fn degree_class_max(d: &Partition, opts: &SearchOptions) -> Result<SearchReport> {
    let spec = ClassSpec::degree_class(d.clone())?;
    let start = Instant::now();
    let classes = enumerate_class(&spec, opts.budget.candidates)?;
    let examined = classes.len() as u64;
    let ferrers = ferrers_from_partition(d, d.largest().unwrap_or(0) as usize)?;
    let ferrers_code = canonical_code(&ferrers)?;
    let (scored, best, top) = maximize(classes);
    let mut report = SearchReport {
        class: spec,
        checked_property: "the Ferrers graph attains the maximum spectral radius".into(),
        examined,
        extremal: Vec::new(),
        counterexamples: Vec::new(),
        top_values: top,
        elapsed_seconds: None,
    };
    let mut ferrers_found = false;
    for s in scored.into_iter().filter(|s| best - s.lambda <= DEFAULT_TOL) {
        ferrers_found |= s.code == ferrers_code;
        let mut rec = GraphRecord::new(s.code, &s.graph);
        rec.lambda_max = Some(s.lambda);
        report.extremal.push(rec);
    }
    if !ferrers_found {
        let mut rec = GraphRecord::new(ferrers_code, &ferrers);
        rec.lambda_max = Some(spectral_radius::<f64>(&ferrers));
        rec.reason = Some("Ferrers graph is not a maximizer".into());
        report.counterexamples.push(rec);
    }
    Ok(finish(report, start, opts))
}

#[cfg(test)]
mod tests;
