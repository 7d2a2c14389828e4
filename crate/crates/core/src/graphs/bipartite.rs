use super::general::{Graph, MAX_VERTICES};
use crate::error::{Error, Result};
use num_rational::BigRational;
use serde::Serialize;

/// Which part of the bipartition a vertex belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    U,
    V,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::U => Side::V,
            Side::V => Side::U,
        }
    }
}

/// A vertex of a bipartite graph: part and 0-based index within the part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BVertex {
    pub side: Side,
    pub index: usize,
}

impl BVertex {
    pub fn u(index: usize) -> Self {
        BVertex { side: Side::U, index }
    }

    pub fn v(index: usize) -> Self {
        BVertex { side: Side::V, index }
    }
}

/// Bipartite graph with parts `U = {u_0..u_{m-1}}` and `V = {v_0..v_{n-1}}`.
/// Row `i` of the biadjacency matrix is a bitmask over `V`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BipartiteGraph {
    m: usize,
    n: usize,
    rows: Vec<u64>,
}

/// Degree data of a bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    /// `U` degrees followed by `V` degrees.
    pub degrees: Vec<u32>,
    pub e: usize,
    /// Bipartite density `e / (m n)`.
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub rho: BigRational,
    pub connected: bool,
}

impl BipartiteGraph {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Precondition("both parts must be nonempty".into()));
        }
        if n > 64 || m + n > MAX_VERTICES {
            return Err(Error::Precondition(format!("parts {m}+{n} exceed the supported size")));
        }
        Ok(BipartiteGraph { m, n, rows: vec![0; m] })
    }

    /// Builds from biadjacency rows; bits at or above `n` are rejected.
    pub fn from_rows(n: usize, rows: Vec<u64>) -> Result<Self> {
        let mut g = Self::new(rows.len(), n)?;
        if n < 64 && rows.iter().any(|&r| r >> n != 0) {
            return Err(Error::Precondition("row has bits beyond the column count".into()));
        }
        g.rows = rows;
        Ok(g)
    }

    pub fn from_edges(m: usize, n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(m, n)?;
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    pub fn complete(m: usize, n: usize) -> Result<Self> {
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Self::from_rows(n, vec![full; m])
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.m + self.n
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> u64 {
        self.rows[i]
    }

    /// Column `j` as a bitmask over `U`.
    pub fn col(&self, j: usize) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &r)| acc | ((r >> j & 1) << i))
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.m && j < self.n && self.rows[i] >> j & 1 == 1
    }

    fn check(&self, v: BVertex) -> Result<()> {
        let bound = match v.side {
            Side::U => self.m,
            Side::V => self.n,
        };
        if v.index >= bound {
            return Err(Error::InvalidVertex {
                vertex: v.index,
                count: bound,
            });
        }
        Ok(())
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        self.check(BVertex::u(i))?;
        self.check(BVertex::v(j))?;
        if self.has_edge(i, j) {
            return Err(Error::Precondition(format!("duplicate edge u{i}-v{j}")));
        }
        self.rows[i] |= 1 << j;
        Ok(())
    }

    pub fn without_edge(&self, i: usize, j: usize) -> Result<Self> {
        if !self.has_edge(i, j) {
            return Err(Error::Precondition(format!("edge u{i}-v{j} not present")));
        }
        let mut g = self.clone();
        g.rows[i] &= !(1 << j);
        Ok(g)
    }

    pub fn row_degrees(&self) -> Vec<u32> {
        self.rows.iter().map(|r| r.count_ones()).collect()
    }

    pub fn col_degrees(&self) -> Vec<u32> {
        (0..self.n).map(|j| self.col(j).count_ones()).collect()
    }

    pub fn degree(&self, v: BVertex) -> u32 {
        match v.side {
            Side::U => self.rows[v.index].count_ones(),
            Side::V => self.col(v.index).count_ones(),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Edges `(i, j)` meaning `u_i ~ v_j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (i, &r) in self.rows.iter().enumerate() {
            let mut bits = r;
            while bits != 0 {
                out.push((i, bits.trailing_zeros() as usize));
                bits &= bits - 1;
            }
        }
        out
    }

    /// Swaps the roles of `U` and `V`.
    pub fn transpose(&self) -> Self {
        let rows = (0..self.n).map(|j| self.col(j)).collect();
        BipartiteGraph {
            m: self.n,
            n: self.m,
            rows,
        }
    }

    /// Relabels so that new row `k` is old row `row_order[k]` and new column `k`
    /// is old column `col_order[k]`.
    pub fn permuted(&self, row_order: &[usize], col_order: &[usize]) -> Self {
        let rows = row_order
            .iter()
            .map(|&i| {
                col_order
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (k, &j)| acc | ((self.rows[i] >> j & 1) << k))
            })
            .collect();
        BipartiteGraph {
            m: self.m,
            n: self.n,
            rows,
        }
    }

    /// General graph with `U` vertices first (`0..m`), then `V` (`m..m+n`).
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::new(self.m + self.n).expect("size checked at construction");
        for (i, j) in self.edges() {
            g.add_edge(i, self.m + j).expect("simple bipartite edge");
        }
        g
    }

    /// Index of `v` in the general-graph numbering.
    pub fn flat_index(&self, v: BVertex) -> usize {
        match v.side {
            Side::U => v.index,
            Side::V => self.m + v.index,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.to_graph().is_connected()
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.rows.iter().any(|&r| r == 0) || self.rows.iter().fold(0, |a, &r| a | r).count_ones() as usize != self.n
    }

    /// Every `u` adjacent to every `v`.
    pub fn is_complete_bipartite(&self) -> bool {
        self.edge_count() == self.m * self.n
    }

    /// Bipartite density `e / (m n)`.
    pub fn density(&self) -> BigRational {
        BigRational::new((self.edge_count() as i64).into(), ((self.m * self.n) as i64).into())
    }

    pub fn stats(&self) -> GraphStats {
        let mut degrees = self.row_degrees();
        degrees.extend(self.col_degrees());
        GraphStats {
            degrees,
            e: self.edge_count(),
            rho: self.density(),
            connected: self.is_connected(),
        }
    }
}
