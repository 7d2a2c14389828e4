//! Canonical codes for bipartite graphs with a fixed bipartition.

use crate::error::{Error, Result};
use crate::graphs::BipartiteGraph;
use std::fmt;
use std::str::FromStr;

/// Largest side accepted by [`canonical_code`].
pub const MAX_SIDE: usize = 12;

/// Isomorphism-class code: `[m, n]` followed by the rows of a canonical
/// biadjacency matrix of the smaller side, two bytes per row.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn m(&self) -> usize {
        self.0[0] as usize
    }

    pub fn n(&self) -> usize {
        self.0[1] as usize
    }

    /// A representative graph with the original part sizes.
    pub fn to_graph(&self) -> BipartiteGraph {
        let (m, n) = (self.m(), self.n());
        let (r, c) = (m.min(n), m.max(n));
        let rows: Vec<u64> = self.0[2..]
            .chunks(2)
            .map(|b| u16::from_be_bytes([b[0], b[1]]) as u64)
            .map(|bits| reverse_low(bits, c))
            .collect();
        debug_assert_eq!(rows.len(), r);
        let g = BipartiteGraph::from_rows(c, rows).expect("valid code");
        if m > n {
            g.transpose()
        } else {
            g
        }
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

impl FromStr for CanonicalCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("malformed canonical code {s:?}"));
        if s.len() % 2 != 0 || !s.is_ascii() {
            return Err(bad());
        }
        let bytes = (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&s[i..i + 2], 16).map_err(|_| bad()))
            .collect::<Result<Vec<u8>>>()?;
        if bytes.len() < 2 {
            return Err(bad());
        }
        let (m, n) = (bytes[0] as usize, bytes[1] as usize);
        let (r, c) = (m.min(n), m.max(n));
        if r == 0 || c > MAX_SIDE || bytes.len() != 2 + 2 * r {
            return Err(bad());
        }
        if bytes[2..].chunks(2).any(|b| u16::from_be_bytes([b[0], b[1]]) >> c != 0) {
            return Err(bad());
        }
        Ok(CanonicalCode(bytes))
    }
}

/// Reverses the low `width` bits, so column 0 becomes the most significant.
fn reverse_low(bits: u64, width: usize) -> u64 {
    (0..width).fold(0, |acc, j| acc << 1 | (bits >> j & 1))
}

/// Canonical code of `g`.
///
/// Rows are permuted within classes of equal (degree, neighbour degrees);
/// for each such order the columns are sorted, and the smallest row string
/// wins. When `m > n` the transpose is used, and when `m = n` the smaller
/// of the two sides' codes, so parts are swappable exactly when they have
/// equal size.
pub fn canonical_code(g: &BipartiteGraph) -> Result<CanonicalCode> {
    let (m, n) = (g.m(), g.n());
    if m > MAX_SIDE || n > MAX_SIDE {
        return Err(Error::Precondition(format!(
            "canonical codes need both sides at most {MAX_SIDE}, got {m} x {n}"
        )));
    }
    let rows = match m.cmp(&n) {
        std::cmp::Ordering::Less => row_canonical(g),
        std::cmp::Ordering::Greater => row_canonical(&g.transpose()),
        std::cmp::Ordering::Equal => row_canonical(g).min(row_canonical(&g.transpose())),
    };
    let mut bytes = vec![m as u8, n as u8];
    for r in rows {
        bytes.extend_from_slice(&(r as u16).to_be_bytes());
    }
    Ok(CanonicalCode(bytes))
}

fn row_canonical(g: &BipartiteGraph) -> Vec<u64> {
    let (m, n) = (g.m(), g.n());
    let cdeg = g.col_degrees();
    let key = |i: usize| {
        let row = g.row(i);
        let mut nd: Vec<u32> = (0..n).filter(|&j| row >> j & 1 == 1).map(|j| cdeg[j]).collect();
        nd.sort_unstable();
        (row.count_ones(), nd)
    };
    let mut keyed: Vec<(_, usize)> = (0..m).map(|i| (key(i), i)).collect();
    keyed.sort();
    // cell boundaries: position p may hold any row sharing the key at p
    let cell_of: Vec<usize> = {
        let mut out = vec![0; m];
        for p in 1..m {
            out[p] = if keyed[p].0 == keyed[p - 1].0 { out[p - 1] } else { p };
        }
        out
    };
    let mut best: Option<Vec<u64>> = None;
    let mut order = Vec::with_capacity(m);
    let mut used = vec![false; m];
    search(g, &keyed, &cell_of, &mut order, &mut used, &mut best);
    best.expect("at least one ordering")
}

fn search(
    g: &BipartiteGraph,
    keyed: &[(impl PartialEq, usize)],
    cell_of: &[usize],
    order: &mut Vec<usize>,
    used: &mut [bool],
    best: &mut Option<Vec<u64>>,
) {
    let p = order.len();
    if p == keyed.len() {
        let candidate = rows_for(g, order);
        if best.as_ref().map_or(true, |b| candidate < *b) {
            *best = Some(candidate);
        }
        return;
    }
    let start = cell_of[p];
    let mut q = start;
    while q < keyed.len() && cell_of[q] == start {
        if !used[q] {
            used[q] = true;
            order.push(keyed[q].1);
            search(g, keyed, cell_of, order, used, best);
            order.pop();
            used[q] = false;
        }
        q += 1;
    }
}

/// Rows in the given order after sorting columns ascending, read top to bottom.
fn rows_for(g: &BipartiteGraph, order: &[usize]) -> Vec<u64> {
    let m = order.len();
    let mut cols: Vec<u64> = (0..g.n())
        .map(|j| order.iter().fold(0u64, |acc, &i| acc << 1 | (g.row(i) >> j & 1)))
        .collect();
    cols.sort_unstable();
    (0..m)
        .map(|p| {
            let shift = m - 1 - p;
            cols.iter().fold(0u64, |acc, &c| acc << 1 | (c >> shift & 1))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::ferrers_from_partition;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn shuffled(g: &BipartiteGraph, rng: &mut ChaCha8Rng) -> BipartiteGraph {
        let mut r: Vec<usize> = (0..g.m()).collect();
        let mut c: Vec<usize> = (0..g.n()).collect();
        r.shuffle(rng);
        c.shuffle(rng);
        g.permuted(&r, &c)
    }

    #[test]
    fn invariant_under_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let graphs = [
            BipartiteGraph::complete(2, 3).unwrap(),
            ferrers_from_partition(&"3,3,2,1".parse().unwrap(), 3).unwrap(),
            BipartiteGraph::from_edges(4, 4, &[(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (3, 0)]).unwrap(),
            BipartiteGraph::from_edges(3, 5, &[(0, 0), (0, 4), (1, 1), (1, 2), (2, 2), (2, 3), (2, 4)]).unwrap(),
        ];
        for g in &graphs {
            let code = canonical_code(g).unwrap();
            assert_eq!(canonical_code(&code.to_graph()).unwrap(), code);
            for _ in 0..1000 {
                assert_eq!(canonical_code(&shuffled(g, &mut rng)).unwrap(), code);
            }
        }
    }

    #[test]
    fn square_sides_swap() {
        let g = BipartiteGraph::from_edges(2, 2, &[(0, 0), (0, 1), (1, 0)]).unwrap();
        assert_eq!(canonical_code(&g).unwrap(), canonical_code(&g.transpose()).unwrap());
        let h = ferrers_from_partition(&"3,1".parse().unwrap(), 3).unwrap();
        assert_ne!(canonical_code(&h).unwrap(), canonical_code(&h.transpose()).unwrap());
        assert_eq!(canonical_code(&h.transpose()).unwrap().to_graph().m(), 3);
    }

    #[test]
    fn hex_round_trip() {
        let code = canonical_code(&ferrers_from_partition(&"4,4,2".parse().unwrap(), 4).unwrap()).unwrap();
        let text = code.to_string();
        assert_eq!(text.parse::<CanonicalCode>().unwrap(), code);
        assert!("0302ff".parse::<CanonicalCode>().is_err());
        assert!("zz".parse::<CanonicalCode>().is_err());
    }

    #[test]
    fn size_limit() {
        assert!(canonical_code(&BipartiteGraph::new(13, 2).unwrap()).is_err());
    }
}
