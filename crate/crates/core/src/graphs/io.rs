//! Plain-text graph files.
//!
//! ```text
//! bipartite 4 3        general 4
//! e 1 1                1 2
//! e 1 2                2 3
//! ...                  ...
//! ```
//!
//! Indices are 1-based. In a bipartite file `e i j` joins `u_i` and `v_j`
//! (the leading `e` is optional). Blank lines and `#` comments are ignored.

use super::{BipartiteGraph, Graph};
use crate::error::{Error, Result};
use std::fmt::Write;

/// Contents of a graph file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphFile {
    Bipartite(BipartiteGraph),
    General(Graph),
}

impl GraphFile {
    /// The general-graph view (bipartite files put `U` first).
    pub fn to_graph(&self) -> Graph {
        match self {
            GraphFile::Bipartite(b) => b.to_graph(),
            GraphFile::General(g) => g.clone(),
        }
    }

    /// The bipartite view. A general file is accepted when it is connected
    /// and bipartite; the colour class of vertex 1 becomes `U`.
    pub fn to_bipartite(&self) -> Result<BipartiteGraph> {
        match self {
            GraphFile::Bipartite(b) => Ok(b.clone()),
            GraphFile::General(g) => bipartite_view(g),
        }
    }
}

/// Splits a bipartite general graph into its two colour classes, keeping the
/// relative vertex order inside each class.
pub fn bipartite_view(g: &Graph) -> Result<BipartiteGraph> {
    let colour = g
        .bipartition()
        .ok_or_else(|| Error::Precondition("graph is not bipartite".into()))?;
    let us: Vec<usize> = (0..colour.len()).filter(|&v| !colour[v]).collect();
    let vs: Vec<usize> = (0..colour.len()).filter(|&v| colour[v]).collect();
    let mut b = BipartiteGraph::new(us.len(), vs.len())?;
    for (a, c) in g.edges() {
        let (x, y) = if colour[a] { (c, a) } else { (a, c) };
        let i = us.iter().position(|&u| u == x).unwrap();
        let j = vs.iter().position(|&v| v == y).unwrap();
        b.add_edge(i, j)?;
    }
    Ok(b)
}

fn parse_index(tok: Option<&str>, line: usize, bound: usize) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::Parse {
        line,
        msg: "missing vertex index".into(),
    })?;
    let v: usize = tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("bad vertex index {tok:?}"),
    })?;
    if v == 0 || v > bound {
        return Err(Error::Parse {
            line,
            msg: format!("vertex index {v} outside 1..={bound}"),
        });
    }
    Ok(v - 1)
}

fn parse_count(tok: Option<&str>, line: usize) -> Result<usize> {
    tok.and_then(|t| t.parse().ok()).ok_or_else(|| Error::Parse {
        line,
        msg: "expected a vertex count".into(),
    })
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty graph file".into(),
    })?;
    let mut toks = header.split_whitespace();
    let wrap = |line: usize| move |e: Error| Error::Parse { line, msg: e.to_string() };
    match toks.next() {
        Some("bipartite") => {
            let m = parse_count(toks.next(), hline)?;
            let n = parse_count(toks.next(), hline)?;
            let mut g = BipartiteGraph::new(m, n).map_err(wrap(hline))?;
            for (ln, l) in lines {
                let mut t = l.split_whitespace().peekable();
                if t.peek() == Some(&"e") {
                    t.next();
                }
                let i = parse_index(t.next(), ln, m)?;
                let j = parse_index(t.next(), ln, n)?;
                if t.next().is_some() {
                    return Err(Error::Parse { line: ln, msg: "trailing tokens".into() });
                }
                g.add_edge(i, j).map_err(wrap(ln))?;
            }
            Ok(GraphFile::Bipartite(g))
        }
        Some("general") => {
            let n = parse_count(toks.next(), hline)?;
            let mut g = Graph::new(n).map_err(wrap(hline))?;
            for (ln, l) in lines {
                let mut t = l.split_whitespace();
                let a = parse_index(t.next(), ln, n)?;
                let b = parse_index(t.next(), ln, n)?;
                if t.next().is_some() {
                    return Err(Error::Parse { line: ln, msg: "trailing tokens".into() });
                }
                g.add_edge(a, b).map_err(wrap(ln))?;
            }
            Ok(GraphFile::General(g))
        }
        other => Err(Error::Parse {
            line: hline,
            msg: format!("expected `bipartite m n` or `general n`, found {other:?}"),
        }),
    }
}

pub fn write_bipartite(g: &BipartiteGraph) -> String {
    let mut s = format!("bipartite {} {}\n", g.m(), g.n());
    for (i, j) in g.edges() {
        writeln!(s, "e {} {}", i + 1, j + 1).unwrap();
    }
    s
}

pub fn write_general(g: &Graph) -> String {
    let mut s = format!("general {}\n", g.vertex_count());
    for (a, b) in g.edges() {
        writeln!(s, "{} {}", a + 1, b + 1).unwrap();
    }
    s
}

pub fn write_graph(f: &GraphFile) -> String {
    match f {
        GraphFile::Bipartite(b) => write_bipartite(b),
        GraphFile::General(g) => write_general(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_both_forms() {
        let f = parse_graph("# example\nbipartite 2 2\ne 1 1\n1 2\n\ne 2 1\n").unwrap();
        let GraphFile::Bipartite(b) = &f else { panic!() };
        assert_eq!(b.edges(), vec![(0, 0), (0, 1), (1, 0)]);
        let g = parse_graph("general 3\n1 2\n2 3\n").unwrap();
        assert_eq!(g.to_graph().edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(g.to_bipartite().unwrap().edge_count(), 2);
    }

    #[test]
    fn errors_name_the_line() {
        assert_eq!(
            parse_graph("bipartite 2 2\ne 1 1\ne 3 1\n"),
            Err(Error::Parse { line: 3, msg: "vertex index 3 outside 1..=2".into() })
        );
        assert!(matches!(parse_graph("general 3\n1 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("graph 3\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_graph(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph("general 3\n1 2\n2 1\n"), Err(Error::Parse { line: 3, .. })));
    }

    proptest! {
        #[test]
        fn bipartite_roundtrip(m in 1usize..6, n in 1usize..6, bits in proptest::collection::vec(any::<u64>(), 6)) {
            let rows = bits[..m].iter().map(|b| b & ((1 << n) - 1)).collect();
            let g = BipartiteGraph::from_rows(n, rows).unwrap();
            let text = write_bipartite(&g);
            prop_assert_eq!(parse_graph(&text).unwrap(), GraphFile::Bipartite(g));
        }
    }
}
