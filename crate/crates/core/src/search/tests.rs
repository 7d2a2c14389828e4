use super::*;
use crate::graphs::Graph;
use std::collections::BTreeSet;

fn opts() -> SearchOptions {
    SearchOptions::default()
}

/// Labeled enumeration deduplicated by trying every vertex permutation.
fn naive_connected_bipartite(max_vertices: usize) -> usize {
    let mut classes: BTreeSet<Vec<u64>> = BTreeSet::new();
    for n in 2..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let perms = permutations(n);
        for mask in 0u64..(1 << pairs.len()) {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            if !g.is_connected() || g.bipartition().is_none() {
                continue;
            }
            let key = perms
                .iter()
                .map(|p| {
                    let mut bits: Vec<(usize, usize)> =
                        edges.iter().map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b]))).collect();
                    bits.sort();
                    bits.iter().fold(0u64, |acc, &(a, b)| acc | 1 << (a * n + b))
                })
                .min()
                .unwrap();
            classes.insert(vec![n as u64, key]);
        }
    }
    classes.len()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn kpqe_small() {
    let classes = enumerate_class(&ClassSpec::kpqe(2, 2, 3).unwrap(), 1_000).unwrap();
    assert_eq!(classes.len(), 1);
    assert_eq!(crate::trees::tau_bipartite(&classes[0].1), BigInt::from(1));
    assert!(ClassSpec::kpqe(2, 2, 4).is_err());
    assert!(ClassSpec::kpqe(3, 2, 3).is_err());
}

#[test]
fn connected_bipartite_counts_match_naive() {
    let small = enumerate_class(&ClassSpec::all_connected_bipartite(4), 1_000_000).unwrap();
    assert_eq!(small.len(), 5);
    for max in 2..=6 {
        let fast = enumerate_class(&ClassSpec::all_connected_bipartite(max), 1_000_000).unwrap();
        assert_eq!(fast.len(), naive_connected_bipartite(max), "max = {max}");
    }
}

#[test]
fn known_connected_bipartite_counts() {
    let classes = enumerate_class(&ClassSpec::all_connected_bipartite(8), u64::MAX).unwrap();
    let count = |v: usize| classes.iter().filter(|(_, g)| g.vertex_count() == v).count();
    assert_eq!((2..=8).map(count).collect::<Vec<_>>(), vec![1, 1, 3, 5, 17, 44, 182]);
}

#[test]
fn codes_strictly_increasing_and_distinguish_equal_degrees() {
    let classes = enumerate_class(&ClassSpec::all_connected_bipartite(7), u64::MAX).unwrap();
    assert!(classes.windows(2).all(|w| w[0].0 < w[1].0));
    // some pair shares both degree sequences yet differs in tree count
    let mut found = false;
    for (i, (_, a)) in classes.iter().enumerate() {
        for (_, b) in &classes[i + 1..] {
            let same = |g: &BipartiteGraph| {
                let mut r = g.row_degrees();
                let mut c = g.col_degrees();
                r.sort();
                c.sort();
                (g.m(), g.n(), r, c)
            };
            if same(a) == same(b) && crate::trees::tau_bipartite(a) != crate::trees::tau_bipartite(b) {
                found = true;
            }
        }
    }
    assert!(found);
}

#[test]
fn budget_is_enforced() {
    let err = enumerate_class(&ClassSpec::all_connected_bipartite(7), 10).unwrap_err();
    assert!(matches!(err, Error::BudgetExceeded { .. }));
    assert_eq!(
        "vertices=12,pq=30,trees=5".parse::<Budget>().unwrap(),
        Budget {
            vertices: 12,
            pq: 30,
            trees: 5,
            ..Budget::default()
        }
    );
    assert!("vertices=0".parse::<Budget>().is_err());
    assert!("bogus=3".parse::<Budget>().is_err());
}

#[test]
fn spectral_search_worked_example() {
    let r = spectral_search(3, 4, 10, &opts()).unwrap();
    assert!(r.verified());
    assert_eq!(r.extremal.len(), 1);
    let best = &r.extremal[0];
    assert_eq!(best.partition, Some("4,3,3".parse().unwrap()));
    assert!((best.lambda_max.unwrap() - 3.0592).abs() < 5e-4);
    assert_eq!(best.complete_plus_vertex, Some(true));
    assert!((r.top_values[1] - 3.0204).abs() < 5e-4);
}

/// Under the literal class definition some maximizers are disconnected and
/// not Ferrers; among connected members every maximizer is Ferrers.
#[test]
fn spectral_maximizers_are_ferrers() {
    let mut literal_failures = 0;
    for p in 2..=4 {
        for q in p..=20 / p {
            for e in 2..p * q {
                let r = spectral_search(p, q, e, &opts()).unwrap();
                for c in &r.counterexamples {
                    assert!(!c.graph().is_connected(), "({p},{q},{e})");
                    literal_failures += 1;
                }
                let spec = ClassSpec::kpqe(p, q, e).unwrap().connected_only();
                let r = spectral_search_in(spec, &opts()).unwrap();
                assert!(r.verified(), "({p},{q},{e})");
                assert!(r.extremal.iter().all(|x| x.is_ferrers));
            }
        }
    }
    assert!(literal_failures > 0);
    let r = spectral_search(2, 2, 2, &opts()).unwrap();
    assert_eq!((r.examined, r.counterexamples.len()), (1, 1));
}

#[test]
fn degree_classes() {
    let r = degree_class_max(&"3,3,2,1".parse().unwrap(), &opts()).unwrap();
    assert!(r.verified());
    let r = degree_class_max(&"2,1".parse().unwrap(), &opts()).unwrap();
    assert_eq!(r.examined, 2);
    assert!(r.verified());
    let r = degree_class_max(&"2,2".parse().unwrap(), &opts()).unwrap();
    assert_eq!(r.extremal.len(), 1);
    assert!(r.extremal[0].graph().is_complete_bipartite());
}

#[test]
fn ferrers_bound_small() {
    let r = verify_ferrers_bound(7, &opts()).unwrap();
    assert!(r.verified());
    assert_eq!(r.examined, 1 + 1 + 3 + 5 + 17 + 44);
    assert!(r.extremal.iter().filter(|x| x.is_ferrers).count() > 0);
    assert!(verify_ferrers_bound(11, &opts()).is_err());
}

#[test]
fn complete_plus_vertex_shape() {
    let g1 = ferrers_from_partition(&"4,4,2".parse().unwrap(), 4).unwrap();
    let g2 = ferrers_from_partition(&"4,3,3".parse().unwrap(), 4).unwrap();
    assert!(is_complete_plus_vertex(&g1) && is_complete_plus_vertex(&g2));
    let other = ferrers_from_partition(&"4,3,2".parse().unwrap(), 4).unwrap();
    assert!(!is_complete_plus_vertex(&other));
}
