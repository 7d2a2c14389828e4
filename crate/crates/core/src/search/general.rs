//! Connected general graphs up to isomorphism, grown one vertex at a time.

use crate::error::{Error, Result};
use crate::graphs::Graph;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Vertex limit for brute-force canonical forms.
pub const MAX_GENERAL_VERTICES: usize = 8;

/// Upper-triangle adjacency bits, minimized over vertex orders that respect
/// the (degree, neighbour degrees) refinement. Prefixed with the order.
pub fn general_canonical_code(g: &Graph) -> Result<Vec<u64>> {
    let n = g.vertex_count();
    if n > MAX_GENERAL_VERTICES {
        return Err(Error::Precondition(format!(
            "general canonical form limited to {MAX_GENERAL_VERTICES} vertices"
        )));
    }
    let deg = g.degrees();
    let key = |v: usize| {
        let mut nd: Vec<u32> = (0..n).filter(|&w| g.has_edge(v, w)).map(|w| deg[w]).collect();
        nd.sort_unstable();
        (std::cmp::Reverse(deg[v]), nd)
    };
    let mut keyed: Vec<_> = (0..n).map(|v| (key(v), v)).collect();
    keyed.sort();
    let mut cell_start = vec![0; n];
    for p in 1..n {
        cell_start[p] = if keyed[p].0 == keyed[p - 1].0 { cell_start[p - 1] } else { p };
    }
    let mut best: Option<u64> = None;
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];
    walk(g, &keyed, &cell_start, &mut order, &mut used, &mut best);
    Ok(vec![n as u64, best.unwrap_or(0)])
}

fn walk<K>(
    g: &Graph,
    keyed: &[(K, usize)],
    cell_start: &[usize],
    order: &mut Vec<usize>,
    used: &mut [bool],
    best: &mut Option<u64>,
) {
    let p = order.len();
    if p == keyed.len() {
        let mut bits = 0u64;
        for a in 0..p {
            for b in a + 1..p {
                bits = bits << 1 | u64::from(g.has_edge(order[a], order[b]));
            }
        }
        if best.map_or(true, |x| bits < x) {
            *best = Some(bits);
        }
        return;
    }
    let start = cell_start[p];
    let mut q = start;
    while q < keyed.len() && cell_start[q] == start {
        if !used[q] {
            used[q] = true;
            order.push(keyed[q].1);
            walk(g, keyed, cell_start, order, used, best);
            order.pop();
            used[q] = false;
        }
        q += 1;
    }
}

/// All connected graphs on `1..=max_n` vertices, one per isomorphism class,
/// ordered by vertex count then canonical code.
///
/// Every connected graph has a vertex whose removal leaves it connected, so
/// extending the previous level by one vertex with a nonempty neighbourhood
/// reaches every class.
pub fn connected_graphs(max_n: usize) -> Result<Vec<Graph>> {
    if max_n > MAX_GENERAL_VERTICES {
        return Err(Error::Precondition(format!(
            "connected graph enumeration limited to {MAX_GENERAL_VERTICES} vertices"
        )));
    }
    let mut out = Vec::new();
    if max_n == 0 {
        return Ok(out);
    }
    let mut level = vec![Graph::new(1)?];
    out.extend(level.iter().cloned());
    for n in 2..=max_n {
        let next: BTreeMap<Vec<u64>, Graph> = level
            .par_iter()
            .flat_map_iter(|g| {
                (1u64..(1 << (n - 1))).map(move |mask| {
                    let mut h = Graph::new(n).expect("within limits");
                    for (a, b) in g.edges() {
                        h.add_edge(a, b).expect("fresh edge");
                    }
                    for v in 0..n - 1 {
                        if mask >> v & 1 == 1 {
                            h.add_edge(v, n - 1).expect("fresh edge");
                        }
                    }
                    h
                })
            })
            .map(|h| (general_canonical_code(&h).expect("within limits"), h))
            .collect::<Vec<_>>()
            .into_iter()
            .collect::<BTreeMap<_, _>>();
        level = next.into_values().collect();
        out.extend(level.iter().cloned());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_counts() {
        let graphs = connected_graphs(6).unwrap();
        let count = |n: usize| graphs.iter().filter(|g| g.vertex_count() == n).count();
        assert_eq!((1..=6).map(count).collect::<Vec<_>>(), vec![1, 1, 2, 6, 21, 112]);
        assert!(graphs.iter().all(Graph::is_connected));
    }

    #[test]
    fn code_invariant_under_relabeling() {
        let mut g = Graph::cycle(6);
        g.add_edge(0, 3).unwrap();
        let relabeled = Graph::from_edges(6, &g.edges().iter().map(|&(a, b)| ((a + 2) % 6, (b + 2) % 6)).collect::<Vec<_>>()).unwrap();
        assert_eq!(general_canonical_code(&g).unwrap(), general_canonical_code(&relabeled).unwrap());
    }
}
