//! Graph text and JSON formats.
//!
//! Text: first line `n m`, then `m` lines `i j` with `1 <= i < j <= n`; edge
//! order is line order. JSON: `{"n": 4, "edges": [[1, 2], ...]}`, also 1-based.

use serde::{Deserialize, Serialize};

use super::OrderedGraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<OrderedGraph> for GraphJson {
    fn from(g: OrderedGraph) -> Self {
        GraphJson { n: g.n, edges: g.edges.iter().map(|&(a, b)| [a + 1, b + 1]).collect() }
    }
}

impl TryFrom<GraphJson> for OrderedGraph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Self> {
        let mut edges = Vec::with_capacity(j.edges.len());
        for [a, b] in j.edges {
            if a == 0 || b == 0 {
                return Err(Error::Parse("vertex labels are 1-based".into()));
            }
            edges.push((a - 1, b - 1));
        }
        OrderedGraph::new(j.n, edges)
    }
}

pub fn parse_text(src: &str) -> Result<OrderedGraph> {
    let mut lines = src.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Parse("empty graph file".into()))?;
    let (n, m) = parse_pair(header)?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {m} edge lines, got {}", edges.len())))?;
        let (i, j) = parse_pair(line)?;
        if i == 0 || j == 0 || i >= j {
            return Err(Error::Parse(format!("edge line `{line}` must satisfy 1 <= i < j")));
        }
        edges.push((i - 1, j - 1));
    }
    if let Some(extra) = lines.next() {
        return Err(Error::Parse(format!("trailing content `{extra}`")));
    }
    OrderedGraph::new(n, edges).map_err(|e| Error::Parse(e.to_string()))
}

fn parse_pair(line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::Parse(format!("expected two integers in `{line}`")))?
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer in `{line}`")))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(Error::Parse(format!("expected two integers in `{line}`")));
    }
    Ok((a, b))
}

pub fn to_text(g: &OrderedGraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(a, b) in g.edges() {
        out.push_str(&format!("{} {}\n", a + 1, b + 1));
    }
    out
}

pub fn parse_json(src: &str) -> Result<OrderedGraph> {
    serde_json::from_str(src).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_json(g: &OrderedGraph) -> String {
    serde_json::to_string(g).expect("graph serialization cannot fail")
}

/// Parses either format, picking JSON when the first non-blank byte is `{`.
pub fn parse_any(src: &str) -> Result<OrderedGraph> {
    if src.trim_start().starts_with('{') {
        parse_json(src)
    } else {
        parse_text(src)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;
    use proptest::prelude::*;

    #[test]
    fn parses_text() {
        let g = parse_text("3 2\n1 2\n2 3\n").unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn rejects_reversed_pair() {
        assert!(parse_text("3 1\n2 1\n").is_err());
        assert!(parse_text("3 2\n1 2\n").is_err());
        assert!(parse_text("3 1\n1 x\n").is_err());
    }

    #[test]
    fn json_shape() {
        assert_eq!(to_json(&catalog::complete(3)), r#"{"n":3,"edges":[[1,2],[1,3],[2,3]]}"#);
    }

    proptest! {
        #[test]
        fn formats_round_trip(n in 2usize..9, mask in any::<u64>(), shift in 0usize..28) {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            let mut edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let len = edges.len();
            if len > 0 {
                edges.rotate_left(shift % len);
            }
            let g = OrderedGraph::new(n, edges).unwrap();
            let text = to_text(&g);
            prop_assert_eq!(&parse_text(&text).unwrap(), &g);
            prop_assert_eq!(to_text(&parse_text(&text).unwrap()), text);
            let json = to_json(&g);
            prop_assert_eq!(&parse_json(&json).unwrap(), &g);
            prop_assert_eq!(to_json(&parse_any(&json).unwrap()), json);
        }
    }
}
