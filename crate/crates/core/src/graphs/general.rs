use crate::error::{Error, Result};
use crate::exactla::{Matrix, RatMatrix};
use crate::scalar::Real;
use num_rational::BigRational;
use num_bigint::BigInt;

/// Largest vertex count representable by the bitset adjacency.
pub const MAX_VERTICES: usize = 64;

/// A simple undirected graph on vertices `0..n`, adjacency stored as bitsets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    adj: Vec<u64>,
}

impl Graph {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Precondition(format!(
                "at most {MAX_VERTICES} vertices supported, got {n}"
            )));
        }
        Ok(Graph { adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n)?;
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n).expect("vertex count within limit");
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge(a, b).unwrap();
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("valid cycle")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("valid path")
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.adj.len() {
            return Err(Error::InvalidVertex {
                vertex: v,
                count: self.adj.len(),
            });
        }
        Ok(())
    }

    /// Adds `{a, b}`. Loops and duplicate edges are rejected.
    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Err(Error::Precondition(format!("loop at vertex {a}")));
        }
        if self.has_edge(a, b) {
            return Err(Error::Precondition(format!("duplicate edge {{{a}, {b}}}")));
        }
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
        Ok(())
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.adj.len() && b < self.adj.len() && self.adj[a] >> b & 1 == 1
    }

    /// Copy with `{a, b}` removed.
    pub fn without_edge(&self, a: usize, b: usize) -> Result<Self> {
        if !self.has_edge(a, b) {
            return Err(Error::Precondition(format!("edge {{{a}, {b}}} not present")));
        }
        let mut g = self.clone();
        g.adj[a] &= !(1 << b);
        g.adj[b] &= !(1 << a);
        Ok(g)
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.adj[v].count_ones()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.adj.iter().map(|a| a.count_ones()).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.adj.len() {
            let mut higher = if a + 1 >= 64 { 0 } else { self.adj[a] >> (a + 1) << (a + 1) };
            while higher != 0 {
                let b = higher.trailing_zeros() as usize;
                out.push((a, b));
                higher &= higher - 1;
            }
        }
        out
    }

    /// Bitmask of the vertices reachable from `start` without entering `blocked`.
    pub fn reach(&self, start: usize, blocked: u64) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[v] & !seen & !blocked;
            seen |= fresh;
            frontier |= fresh;
        }
        seen
    }

    fn all_mask(&self) -> u64 {
        let n = self.adj.len();
        if n == 64 {
            u64::MAX
        } else {
            (1u64 << n) - 1
        }
    }

    pub fn is_connected(&self) -> bool {
        let n = self.adj.len();
        n == 0 || self.reach(0, 0) == self.all_mask()
    }

    /// Whether removing `v` leaves the remaining vertices disconnected.
    pub fn is_cut_vertex(&self, v: usize) -> bool {
        let n = self.adj.len();
        if n < 3 {
            return false;
        }
        let rest = self.all_mask() & !(1 << v);
        let start = rest.trailing_zeros() as usize;
        self.reach(start, 1 << v) != rest
    }

    /// Whether `{a, b}` is an edge whose removal disconnects its endpoints.
    pub fn is_cut_edge(&self, a: usize, b: usize) -> bool {
        match self.without_edge(a, b) {
            Ok(g) => g.reach(a, 0) >> b & 1 == 0,
            Err(_) => false,
        }
    }

    /// Two-colouring if the graph is bipartite: `true` marks the second class.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let n = self.adj.len();
        let mut colour: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                let c = colour[v].unwrap();
                let mut nb = self.adj[v];
                while nb != 0 {
                    let w = nb.trailing_zeros() as usize;
                    nb &= nb - 1;
                    match colour[w] {
                        None => {
                            colour[w] = Some(!c);
                            stack.push(w);
                        }
                        Some(cw) if cw == c => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(Option::unwrap).collect())
    }

    /// Integer Laplacian `D - A`.
    pub fn laplacian(&self) -> Matrix<i64> {
        let n = self.adj.len();
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                self.degree(i) as i64
            } else if self.has_edge(i, j) {
                -1
            } else {
                0
            }
        })
    }

    pub fn laplacian_big(&self) -> Matrix<BigInt> {
        self.laplacian().map(|&x| BigInt::from(x))
    }

    pub fn laplacian_rational(&self) -> RatMatrix {
        self.laplacian().map(|&x| BigRational::from_integer(BigInt::from(x)))
    }

    pub fn adjacency<F: Real>(&self) -> Matrix<F> {
        let n = self.adj.len();
        Matrix::from_fn(n, n, |i, j| if self.has_edge(i, j) { F::one() } else { F::zero() })
    }

    /// Normalized Laplacian `D^{-1/2} L D^{-1/2}`; isolated vertices are an error.
    pub fn normalized_laplacian<F: Real>(&self) -> Result<Matrix<F>> {
        if let Some(v) = (0..self.adj.len()).find(|&v| self.degree(v) == 0) {
            return Err(Error::IsolatedVertex(v));
        }
        let inv_sqrt: Vec<F> = self
            .degrees()
            .iter()
            .map(|&d| F::one() / F::from_u32(d).unwrap().sqrt())
            .collect();
        let l = self.laplacian();
        let n = self.adj.len();
        Ok(Matrix::from_fn(n, n, |i, j| {
            F::from_i64(*l.get(i, j)).unwrap() * inv_sqrt[i] * inv_sqrt[j]
        }))
    }
}
