//! Ferrers (difference) graphs: construction from a partition, recognition,
//! the Ferrers invariant, and the pendant / bridge constructions used by the
//! bound results.

use super::bipartite::{BVertex, BipartiteGraph, Side};
use crate::error::{Error, Result};
use crate::partitions::Partition;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// Staircase graph of `lambda`: row `i` is adjacent to columns `0..lambda_i`.
///
/// `lambda_1 < ncols` is accepted and leaves isolated columns.
pub fn ferrers_from_partition(lambda: &Partition, ncols: usize) -> Result<BipartiteGraph> {
    let Some(top) = lambda.largest() else {
        return Err(Error::InvalidPartition("empty partition".into()));
    };
    if top as usize > ncols {
        return Err(Error::PartTooLarge { part: top, ncols });
    }
    let rows = lambda.parts().iter().map(|&p| prefix_mask(p as usize)).collect();
    BipartiteGraph::from_rows(ncols, rows)
}

fn prefix_mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Row and column orders that would put `g` in staircase form: rows by degree
/// (ties: lexicographically larger row first), columns by degree, both
/// nonincreasing.
pub fn staircase_order(g: &BipartiteGraph) -> (Vec<usize>, Vec<usize>) {
    let rdeg = g.row_degrees();
    let cdeg = g.col_degrees();
    let mut rows: Vec<usize> = (0..g.m()).collect();
    rows.sort_by(|&a, &b| {
        rdeg[b]
            .cmp(&rdeg[a])
            .then_with(|| g.row(a).reverse_bits().cmp(&g.row(b).reverse_bits()).reverse())
            .then(a.cmp(&b))
    });
    let mut cols: Vec<usize> = (0..g.n()).collect();
    cols.sort_by(|&a, &b| cdeg[b].cmp(&cdeg[a]).then(a.cmp(&b)));
    (rows, cols)
}

/// Whether some row and column permutation puts the biadjacency matrix in
/// staircase form. Isolated vertices are allowed (they sort to the end).
pub fn is_ferrers(g: &BipartiteGraph) -> bool {
    let (rows, cols) = staircase_order(g);
    let p = g.permuted(&rows, &cols);
    let mut prev = usize::MAX;
    for &r in p.rows() {
        let d = r.count_ones() as usize;
        if r != prefix_mask(d) || d > prev {
            return false;
        }
        prev = d;
    }
    true
}

/// Row degree partition of a staircase graph, if `g` is Ferrers.
pub fn ferrers_partition(g: &BipartiteGraph) -> Option<Partition> {
    is_ferrers(g).then(|| Partition::from_unsorted(g.row_degrees()))
}

/// `F(G) = (∏_v deg v) / (m n)`; zero when a vertex is isolated.
pub fn ferrers_invariant(g: &BipartiteGraph) -> BigRational {
    let prod = g
        .row_degrees()
        .into_iter()
        .chain(g.col_degrees())
        .fold(BigInt::one(), |acc, d| acc * BigInt::from(d));
    BigRational::new(prod, BigInt::from(g.m() * g.n()))
}

/// Adds a new vertex in the part opposite `v`, joined only to `v`.
pub fn pendant_add(g: &BipartiteGraph, v: BVertex) -> Result<BipartiteGraph> {
    let bound = match v.side {
        Side::U => g.m(),
        Side::V => g.n(),
    };
    if v.index >= bound {
        return Err(Error::InvalidVertex {
            vertex: v.index,
            count: bound,
        });
    }
    match v.side {
        Side::U => {
            let mut rows = g.rows().to_vec();
            rows[v.index] |= 1 << g.n();
            BipartiteGraph::from_rows(g.n() + 1, rows)
        }
        Side::V => {
            let mut rows = g.rows().to_vec();
            rows.push(1 << v.index);
            BipartiteGraph::from_rows(g.n(), rows)
        }
    }
}

/// Disjoint union of `g` and `h` plus the bridge `{x, y}`.
///
/// With `X` the part of `g` holding `x` and `X'` the part of `h` holding `y`,
/// the result has `U = X ∪ Y'` and `V = Y ∪ X'`, each listed in the order
/// `g`'s vertices then `h`'s.
pub fn bridge_join(g: &BipartiteGraph, h: &BipartiteGraph, x: BVertex, y: BVertex) -> Result<BipartiteGraph> {
    let g = if x.side == Side::U { g.clone() } else { g.transpose() };
    let h = if y.side == Side::V { h.clone() } else { h.transpose() };
    if x.index >= g.m() {
        return Err(Error::InvalidVertex {
            vertex: x.index,
            count: g.m(),
        });
    }
    if y.index >= h.n() {
        return Err(Error::InvalidVertex {
            vertex: y.index,
            count: h.n(),
        });
    }
    // g: rows X, cols Y. h: rows Y', cols X'.
    let mut out = BipartiteGraph::new(g.m() + h.m(), g.n() + h.n())?;
    for (i, j) in g.edges() {
        out.add_edge(i, j)?;
    }
    for (i, j) in h.edges() {
        out.add_edge(g.m() + i, g.n() + j)?;
    }
    out.add_edge(x.index, g.n() + y.index)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::tau_bipartite;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn all_perms(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for perm in all_perms(k - 1) {
            for pos in 0..=perm.len() {
                let mut q = perm.clone();
                q.insert(pos, k - 1);
                out.push(q);
            }
        }
        out
    }

    fn is_staircase(g: &BipartiteGraph) -> bool {
        let mut prev = usize::MAX;
        g.rows().iter().all(|&r| {
            let d = r.count_ones() as usize;
            let ok = r == prefix_mask(d) && d <= prev;
            prev = d;
            ok
        })
    }

    fn brute_force_ferrers(g: &BipartiteGraph) -> bool {
        let rp = all_perms(g.m());
        let cp = all_perms(g.n());
        rp.iter().any(|r| cp.iter().any(|c| is_staircase(&g.permuted(r, c))))
    }

    #[test]
    fn example_graph_degrees() {
        let g = ferrers_from_partition(&p("3,3,2,1"), 3).unwrap();
        assert_eq!(g.row_degrees(), vec![3, 3, 2, 1]);
        assert_eq!(g.col_degrees(), vec![4, 3, 2]);
        assert!(g.is_connected());
        let k11 = ferrers_from_partition(&p("1"), 1).unwrap();
        assert_eq!(k11.edge_count(), 1);
        let k = ferrers_from_partition(&p("4,4,4"), 4).unwrap();
        assert!(k.is_complete_bipartite());
        assert_eq!(k.edge_count(), 12);
        assert!(matches!(ferrers_from_partition(&p("4"), 3), Err(Error::PartTooLarge { .. })));
        let loose = ferrers_from_partition(&p("2,1"), 3).unwrap();
        assert!(!loose.is_connected());
    }

    #[test]
    fn degrees_match_partition_exhaustive() {
        for lambda in Partition::all_fitting(8, 8) {
            if lambda.is_empty() || lambda.weight() > 16 {
                continue;
            }
            let n = lambda.largest().unwrap() as usize;
            let g = ferrers_from_partition(&lambda, n).unwrap();
            assert_eq!(Partition::new(g.row_degrees()).unwrap(), lambda);
            assert_eq!(Partition::new(g.col_degrees()).unwrap(), lambda.conjugate());
            assert!(crate::partitions::gale_ryser(&lambda, &lambda.conjugate()));
        }
    }

    #[test]
    fn recognition_examples() {
        let g = ferrers_from_partition(&p("3,3,2,1"), 3).unwrap();
        let shuffled = g.permuted(&[2, 0, 3, 1], &[1, 2, 0]);
        assert!(is_ferrers(&shuffled));
        let c6 = BipartiteGraph::from_edges(3, 3, &[(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)]).unwrap();
        assert!(!is_ferrers(&c6));
        assert!(!brute_force_ferrers(&c6));
        assert!(is_ferrers(&BipartiteGraph::complete(2, 3).unwrap()));
    }

    #[test]
    fn recognition_matches_brute_force() {
        // every 3x3 biadjacency matrix
        for code in 0u32..512 {
            let rows = (0..3).map(|i| ((code >> (3 * i)) & 7) as u64).collect();
            let g = BipartiteGraph::from_rows(3, rows).unwrap();
            assert_eq!(is_ferrers(&g), brute_force_ferrers(&g), "{g:?}");
        }
    }

    #[test]
    fn recognition_is_permutation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for lambda in ["5,4,4,2,1", "3,3,2,1", "6,6,1", "2,2,2,2"] {
            let g = ferrers_from_partition(&p(lambda), 6).unwrap();
            for _ in 0..50 {
                let mut r: Vec<usize> = (0..g.m()).collect();
                let mut c: Vec<usize> = (0..g.n()).collect();
                r.shuffle(&mut rng);
                c.shuffle(&mut rng);
                assert!(is_ferrers(&g.permuted(&r, &c)));
            }
        }
    }

    #[test]
    fn ferrers_invariant_examples() {
        let g = ferrers_from_partition(&p("3,3,2,1"), 3).unwrap();
        assert_eq!(ferrers_invariant(&g), BigRational::from_integer(36.into()));
        let k11 = BipartiteGraph::complete(1, 1).unwrap();
        assert_eq!(ferrers_invariant(&k11), BigRational::one());
        let k22 = BipartiteGraph::complete(2, 2).unwrap();
        assert_eq!(ferrers_invariant(&k22), BigRational::from_integer(4.into()));
        let iso = ferrers_from_partition(&p("1"), 2).unwrap();
        assert_eq!(ferrers_invariant(&iso), BigRational::from_integer(0.into()));
    }

    #[test]
    fn pendant_examples() {
        let k11 = BipartiteGraph::complete(1, 1).unwrap();
        let p3 = pendant_add(&k11, BVertex::u(0)).unwrap();
        assert_eq!((p3.m(), p3.n(), p3.edge_count()), (1, 2, 2));
        assert!(p3.is_connected());
        let g = ferrers_from_partition(&p("3,3,2,1"), 3).unwrap();
        let h = pendant_add(&g, BVertex::u(0)).unwrap();
        assert_eq!((h.vertex_count(), h.edge_count()), (8, 10));
        assert!(pendant_add(&g, BVertex::v(3)).is_err());
        // a pendant vertex never changes the tree count
        assert_eq!(tau_bipartite(&h), tau_bipartite(&g));
    }

    #[test]
    fn bridge_join_examples() {
        let k11 = BipartiteGraph::complete(1, 1).unwrap();
        let p4 = bridge_join(&k11, &k11, BVertex::u(0), BVertex::u(0)).unwrap();
        assert_eq!((p4.m(), p4.n(), p4.edge_count()), (2, 2, 3));
        assert!(p4.is_connected());
        let g = ferrers_from_partition(&p("3,3,2,1"), 3).unwrap();
        let c4 = BipartiteGraph::complete(2, 2).unwrap();
        let h = bridge_join(&g, &c4, BVertex::v(1), BVertex::u(1)).unwrap();
        // |X_H| = |X| + |Y'|
        assert_eq!(h.m(), 3 + 2);
        assert_eq!(h.n(), 4 + 2);
        assert_eq!(tau_bipartite(&h), tau_bipartite(&g) * tau_bipartite(&c4));
        assert!(bridge_join(&g, &c4, BVertex::u(9), BVertex::u(0)).is_err());
    }
}
