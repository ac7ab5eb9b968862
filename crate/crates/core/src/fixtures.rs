//! Small named digraphs used throughout the tests and documentation.
//!
//! Vertices are 0-based: `c3()` is the cycle `0 -> 1 -> 2 -> 0`.

use crate::graph::{UndirectedGraph, WeightedDigraph};

/// Directed 3-cycle.
pub fn c3() -> WeightedDigraph {
    WeightedDigraph::unweighted(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
}

/// The 3-cycle with its closing edge `2 -> 0` removed.
pub fn c3_open() -> WeightedDigraph {
    WeightedDigraph::unweighted(3, &[(0, 1), (1, 2)]).unwrap()
}

/// Two vertices joined in both directions.
pub fn d2() -> WeightedDigraph {
    WeightedDigraph::unweighted(2, &[(0, 1), (1, 0)]).unwrap()
}

/// Bidirected triangle: all six ordered pairs on three vertices.
pub fn k3_bidirected() -> WeightedDigraph {
    WeightedDigraph::unweighted(3, &[(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]).unwrap()
}

/// Two parallel edges `0 -> 1` and two parallel edges `1 -> 0`.
pub fn m2() -> WeightedDigraph {
    WeightedDigraph::unweighted(2, &[(0, 1), (0, 1), (1, 0), (1, 0)]).unwrap()
}

pub fn triangle() -> UndirectedGraph {
    UndirectedGraph::unweighted(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
}

pub fn four_cycle() -> UndirectedGraph {
    UndirectedGraph::unweighted(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
}
