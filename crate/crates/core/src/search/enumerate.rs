//! Isomorphism-class enumeration for the searched bipartite families.

use super::canon::{canonical_code, CanonicalCode, MAX_SIDE};
use crate::error::{Error, Result};
use crate::graphs::BipartiteGraph;
use crate::partitions::Partition;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassKind {
    /// Subgraphs of `K_{p,q}` with `e` edges.
    Kpqe { p: usize, q: usize, e: usize },
    /// One part has the given degrees; the other part is free.
    DegreeClass { degrees: Partition },
    /// Connected bipartite graphs on at most `max_vertices` vertices.
    AllConnectedBipartite { max_vertices: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassSpec {
    #[serde(flatten)]
    pub kind: ClassKind,
    pub no_isolated_vertices: bool,
    pub exclude_complete_bipartite: bool,
    /// Keep connected graphs only.
    pub connected: bool,
}

impl ClassSpec {
    pub fn kpqe(p: usize, q: usize, e: usize) -> Result<Self> {
        if !(2 <= p && p <= q && 1 < e && e < p * q) {
            return Err(Error::Precondition(format!(
                "need 2 <= p <= q and 1 < e < pq, got p={p}, q={q}, e={e}"
            )));
        }
        if q > MAX_SIDE {
            return Err(Error::Precondition(format!("q = {q} exceeds {MAX_SIDE}")));
        }
        Ok(ClassSpec {
            kind: ClassKind::Kpqe { p, q, e },
            no_isolated_vertices: true,
            exclude_complete_bipartite: true,
            connected: false,
        })
    }

    pub fn degree_class(degrees: Partition) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::InvalidPartition("empty degree sequence".into()));
        }
        if degrees.len() > MAX_SIDE || degrees.weight() as usize > MAX_SIDE {
            return Err(Error::Precondition(format!(
                "degree class needs at most {MAX_SIDE} rows and total degree at most {MAX_SIDE}"
            )));
        }
        Ok(ClassSpec {
            kind: ClassKind::DegreeClass { degrees },
            no_isolated_vertices: true,
            exclude_complete_bipartite: false,
            connected: false,
        })
    }

    pub fn all_connected_bipartite(max_vertices: usize) -> Self {
        ClassSpec {
            kind: ClassKind::AllConnectedBipartite { max_vertices },
            no_isolated_vertices: true,
            exclude_complete_bipartite: false,
            connected: true,
        }
    }

    pub fn connected_only(mut self) -> Self {
        self.connected = true;
        self
    }
}

/// Shared candidate budget across enumeration shards.
struct Counter {
    seen: AtomicU64,
    limit: u64,
    stop: AtomicBool,
}

impl Counter {
    fn tick(&self) -> bool {
        let v = self.seen.fetch_add(1, Ordering::Relaxed) + 1;
        if v > self.limit {
            self.stop.store(true, Ordering::Relaxed);
        }
        !self.stop.load(Ordering::Relaxed)
    }
}

/// Constraints for one `m x n` shape. Columns are bit masks over rows and are
/// generated in nondecreasing order, one multiset per column permutation class.
struct Shape {
    m: usize,
    n: usize,
    edges: Option<usize>,
    row_degrees: Option<Vec<u32>>,
    no_isolated: bool,
    connected: bool,
    exclude_complete: bool,
}

impl Shape {
    fn min_col(&self) -> u64 {
        u64::from(self.no_isolated)
    }

    fn accept(&self, cols: &[u64]) -> Option<BipartiteGraph> {
        let full = (1u64 << self.m) - 1;
        if self.no_isolated && cols.iter().fold(0, |a, &c| a | c) != full {
            return None;
        }
        let rows: Vec<u64> = (0..self.m)
            .map(|i| cols.iter().enumerate().fold(0u64, |acc, (j, &c)| acc | (c >> i & 1) << j))
            .collect();
        let g = BipartiteGraph::from_rows(self.n, rows).ok()?;
        if let Some(d) = &self.row_degrees {
            if g.row_degrees() != *d {
                return None;
            }
        }
        if self.connected && !g.is_connected() {
            return None;
        }
        if self.exclude_complete && g.is_complete_bipartite() {
            return None;
        }
        Some(g)
    }

    fn run(&self, counter: &Counter) -> BTreeMap<CanonicalCode, BipartiteGraph> {
        let top = 1u64 << self.m;
        (self.min_col()..top)
            .into_par_iter()
            .map(|first| {
                let mut out = BTreeMap::new();
                let mut cols = vec![first];
                let mut sums = vec![0u32; self.m];
                add(&mut sums, first, 1);
                if self.feasible(&cols, &sums) {
                    self.extend(&mut cols, &mut sums, counter, &mut out);
                }
                out
            })
            .reduce(BTreeMap::new, |mut a, b| {
                a.extend(b);
                a
            })
    }

    fn feasible(&self, cols: &[u64], sums: &[u32]) -> bool {
        let left = (self.n - cols.len()) as u32;
        if let Some(e) = self.edges {
            let used: u32 = sums.iter().sum();
            let min_more = if self.no_isolated { left } else { 0 };
            if used as usize + min_more as usize > e || used as usize + (left as usize) * self.m < e {
                return false;
            }
        }
        if let Some(d) = &self.row_degrees {
            if sums.iter().zip(d).any(|(&s, &t)| s > t || s + left < t) {
                return false;
            }
        }
        true
    }

    fn extend(
        &self,
        cols: &mut Vec<u64>,
        sums: &mut Vec<u32>,
        counter: &Counter,
        out: &mut BTreeMap<CanonicalCode, BipartiteGraph>,
    ) {
        if counter.stop.load(Ordering::Relaxed) {
            return;
        }
        if cols.len() == self.n {
            if !counter.tick() {
                return;
            }
            if self.edges.map_or(true, |e| sums.iter().sum::<u32>() as usize == e) {
                if let Some(g) = self.accept(cols) {
                    let code = canonical_code(&g).expect("shape within limits");
                    out.entry(code).or_insert(g);
                }
            }
            return;
        }
        let last = *cols.last().expect("first column placed");
        for c in last..(1u64 << self.m) {
            cols.push(c);
            add(sums, c, 1);
            if self.feasible(cols, sums) {
                self.extend(cols, sums, counter, out);
            }
            add(sums, c, -1);
            cols.pop();
        }
    }
}

fn add(sums: &mut [u32], col: u64, sign: i32) {
    for (i, s) in sums.iter_mut().enumerate() {
        if col >> i & 1 == 1 {
            *s = (*s as i32 + sign) as u32;
        }
    }
}

fn shapes(spec: &ClassSpec) -> Result<Vec<Shape>> {
    let base = |m: usize, n: usize| Shape {
        m,
        n,
        edges: None,
        row_degrees: None,
        no_isolated: spec.no_isolated_vertices,
        connected: spec.connected,
        exclude_complete: spec.exclude_complete_bipartite,
    };
    Ok(match &spec.kind {
        ClassKind::Kpqe { p, q, e } => vec![Shape {
            edges: Some(*e),
            ..base(*p, *q)
        }],
        ClassKind::DegreeClass { degrees } => {
            let m = degrees.len();
            let top = degrees.largest().unwrap_or(0) as usize;
            (top.max(1)..=degrees.weight() as usize)
                .map(|n| Shape {
                    row_degrees: Some(degrees.parts().to_vec()),
                    ..base(m, n)
                })
                .collect()
        }
        ClassKind::AllConnectedBipartite { max_vertices } => {
            let mut out = Vec::new();
            for total in 2..=*max_vertices {
                for m in 1..=total / 2 {
                    let n = total - m;
                    if n > MAX_SIDE {
                        continue;
                    }
                    out.push(base(m, n));
                }
            }
            out
        }
    })
}

/// One representative per isomorphism class, in increasing code order.
///
/// `budget` caps the number of labeled candidates generated.
pub fn enumerate_class(spec: &ClassSpec, budget: u64) -> Result<Vec<(CanonicalCode, BipartiteGraph)>> {
    let counter = Counter {
        seen: AtomicU64::new(0),
        limit: budget,
        stop: AtomicBool::new(false),
    };
    let mut all = BTreeMap::new();
    for shape in shapes(spec)? {
        all.extend(shape.run(&counter));
        if counter.stop.load(Ordering::Relaxed) {
            return Err(Error::BudgetExceeded {
                what: "enumeration candidates".into(),
                limit: budget,
                progress: counter.seen.load(Ordering::Relaxed).min(budget),
            });
        }
    }
    Ok(all.into_iter().collect())
}
