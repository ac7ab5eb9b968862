//! Plain-text graph and partition files.
//!
//! Graph file:
//!
//! ```text
//! # comments run to end of line
//! digraph 3
//! 0 1 1
//! 1 2 3/4
//! 2 0
//! ```
//!
//! The header gives the vertex count. Each edge line is `tail head [weight]`
//! with the weight an exact rational `p` or `p/q`, defaulting to 1.
//!
//! Partition file: one `Q <id>: [tails] -> [heads]` line per biclique. Ids
//! are distinct non-negative integers; bicliques are numbered by ascending
//! id. Entries in a list are separated by commas or whitespace and may
//! repeat to express multiplicity.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::{One, Zero};

use crate::biclique::{validate_partition, Biclique, BicliquePartition};
use crate::error::{Error, Result};
use crate::graph::{VertexId, WeightedDigraph};
use crate::rational::{parse_rational, Rational};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Content lines as `(1-based line number, text without comment)`.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_vertex(token: &str, line: usize) -> Result<VertexId> {
    token.parse().map_err(|_| parse_err(line, format!("expected a vertex index, found `{token}`")))
}

pub fn parse_graph(text: &str) -> Result<WeightedDigraph> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or_else(|| parse_err(1, "missing `digraph <n>` header"))?;
    let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["digraph", n] => {
            n.parse::<usize>().map_err(|_| parse_err(header_line, format!("expected a vertex count, found `{n}`")))?
        }
        _ => return Err(parse_err(header_line, "expected `digraph <n>` header")),
    };
    let mut edges = Vec::new();
    for (line, body) in lines {
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let (tail, head, weight) = match tokens.as_slice() {
            [t, h] => (parse_vertex(t, line)?, parse_vertex(h, line)?, Rational::one()),
            [t, h, w] => {
                let weight = parse_rational(w)
                    .ok_or_else(|| parse_err(line, format!("expected a rational weight, found `{w}`")))?;
                (parse_vertex(t, line)?, parse_vertex(h, line)?, weight)
            }
            _ => return Err(parse_err(line, "expected `<tail> <head> [<p>/<q>]`")),
        };
        for v in [tail, head] {
            if v >= n {
                return Err(parse_err(line, format!("vertex {v} out of range for {n} vertices")));
            }
        }
        if tail == head {
            return Err(parse_err(line, format!("self-loop at vertex {tail}")));
        }
        if weight <= Rational::zero() {
            return Err(parse_err(line, format!("weight {weight} is not positive")));
        }
        edges.push((tail, head, weight));
    }
    WeightedDigraph::new(n, edges)
}

/// Inverse of [`parse_graph`]; edges keep their order and ids.
pub fn write_graph(g: &WeightedDigraph) -> String {
    let mut out = format!("digraph {}\n", g.vertex_count());
    for e in g.edges() {
        writeln!(out, "{} {} {}", e.tail, e.head, e.weight).expect("writing to a String");
    }
    out
}

fn parse_list(s: &str, line: usize) -> Result<Vec<VertexId>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| parse_err(line, format!("expected a bracketed vertex list, found `{}`", s.trim())))?;
    inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| parse_vertex(t, line))
        .collect()
}

/// Bicliques in id order, without checking them against a host.
pub fn parse_bicliques(text: &str) -> Result<Vec<Biclique>> {
    let mut by_id = BTreeMap::new();
    for (line, body) in content_lines(text) {
        let rest = body.strip_prefix('Q').ok_or_else(|| parse_err(line, "expected `Q <id>: [..] -> [..]`"))?;
        let (id, sides) = rest.split_once(':').ok_or_else(|| parse_err(line, "missing `:` after biclique id"))?;
        let id: usize =
            id.trim().parse().map_err(|_| parse_err(line, format!("expected a biclique id, found `{}`", id.trim())))?;
        let (tails, heads) = sides.split_once("->").ok_or_else(|| parse_err(line, "missing `->`"))?;
        let q = Biclique::new(parse_list(tails, line)?, parse_list(heads, line)?);
        if by_id.insert(id, q).is_some() {
            return Err(parse_err(line, format!("duplicate biclique id {id}")));
        }
    }
    Ok(by_id.into_values().collect())
}

pub fn parse_partition(g: &WeightedDigraph, text: &str) -> Result<BicliquePartition> {
    let bicliques = parse_bicliques(text)?;
    if bicliques.is_empty() && g.edge_count() > 0 {
        return Err(Error::EmptyPartition);
    }
    validate_partition(g, bicliques)
}

/// Same format the partition's `Display` produces.
pub fn write_partition(p: &BicliquePartition) -> String {
    p.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biclique::star_partition;
    use crate::fixtures::*;
    use crate::rational::rat;

    #[test]
    fn parses_graph_with_comments_and_defaults() {
        let g = parse_graph("# cycle\ndigraph 3\n0 1 1\n\n1 2 3/4 # weighted\n2 0\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.edge(1).weight, rat(3, 4));
        assert_eq!(g.edge(2).weight, rat(1, 1));
    }

    #[test]
    fn graph_round_trip() {
        let g = WeightedDigraph::new(3, [(0, 1, rat(2, 3)), (1, 0, rat(5, 1)), (1, 2, rat(1, 7)), (2, 1, rat(1, 1))])
            .unwrap();
        let text = write_graph(&g);
        assert_eq!(text, "digraph 3\n0 1 2/3\n1 0 5\n1 2 1/7\n2 1 1\n");
        assert_eq!(parse_graph(&text).unwrap(), g);
        assert_eq!(parse_graph(&write_graph(&m2())).unwrap(), m2());
    }

    #[test]
    fn graph_errors_carry_line_numbers() {
        let cases = [
            ("", 1),
            ("graph 3\n", 1),
            ("digraph x\n", 1),
            ("digraph 2\n0 1\n0 5\n", 3),
            ("digraph 2\n\n0 0\n", 3),
            ("digraph 2\n0 1 0\n", 2),
            ("digraph 2\n0 1 -1/2\n", 2),
            ("digraph 2\n0 1 1/0\n", 2),
            ("digraph 2\n0 1 2 3\n", 2),
        ];
        for (text, line) in cases {
            match parse_graph(text) {
                Err(Error::Parse { line: got, .. }) => assert_eq!(got, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn partition_round_trip() {
        let g = k3_bidirected();
        let p = star_partition(&g);
        let text = write_partition(&p);
        assert_eq!(text.lines().next(), Some("Q 0: [0] -> [1, 2]"));
        assert_eq!(parse_partition(&g, &text).unwrap(), p);
    }

    #[test]
    fn partition_ids_order_bicliques() {
        let g = c3();
        let p = parse_partition(&g, "Q 5: [2] -> [0]\nQ 1: [0] -> [1]\nQ 3: [1 ] -> [ 2]\n").unwrap();
        assert_eq!(p.bicliques()[0], Biclique::new(vec![0], vec![1]));
        assert_eq!(p.bicliques()[2], Biclique::new(vec![2], vec![0]));
        let p = parse_partition(&m2(), "Q 0: [0] -> [1 1]\nQ 1: [1] -> [0, 0]\n").unwrap();
        assert_eq!(p.head_multiplicity(0, 1), 2);
    }

    #[test]
    fn partition_errors() {
        let g = c3();
        let err = parse_partition(&g, "Q 0: [0] -> [1]\nQ 0: [1] -> [2]\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 2, message: "duplicate biclique id 0".into() });
        assert_eq!(parse_partition(&g, "Q 0 [0] -> [1]").unwrap_err().kind(), "Parse");
        assert_eq!(parse_partition(&g, "Q 0: 0 -> [1]").unwrap_err().kind(), "Parse");
        assert_eq!(parse_partition(&g, "# nothing\n").unwrap_err().kind(), "EmptyPartition");
        assert_eq!(parse_partition(&g, "Q 0: [0] -> [1]\n").unwrap_err().kind(), "CoverageGap");
        assert_eq!(parse_partition(&g, "Q 0: [0, 1] -> [1, 2]\n").unwrap_err().kind(), "NotABiclique");
    }
}
