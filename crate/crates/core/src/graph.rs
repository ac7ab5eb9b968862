//! Weighted digraphs and the constructions the reduction formulas act on:
//! Laplacians, line digraphs, blow-ups and bidirected undirected graphs.

use std::collections::VecDeque;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::Rational;

/// Dense vertex index in `0..n`.
pub type VertexId = usize;
/// Position of an edge in its digraph's edge list.
pub type EdgeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub tail: VertexId,
    pub head: VertexId,
    pub weight: Rational,
}

/// A digraph on vertices `0..n` with positive rational edge weights.
///
/// Parallel edges are kept distinct; self-loops are rejected. The edge list
/// keeps construction order and an edge's index is its position in it.
/// Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDigraph {
    n: usize,
    edges: Vec<Edge>,
    out_adj: Vec<Vec<EdgeId>>,
    in_adj: Vec<Vec<EdgeId>>,
}

impl WeightedDigraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (VertexId, VertexId, Rational)>) -> Result<Self> {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        let mut list = Vec::new();
        for (idx, (tail, head, weight)) in edges.into_iter().enumerate() {
            for v in [tail, head] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if tail == head {
                return Err(Error::SelfLoop { edge: idx, vertex: tail });
            }
            if weight <= Rational::zero() {
                return Err(Error::NonPositiveWeight { edge: idx, weight: weight.to_string() });
            }
            out_adj[tail].push(idx);
            in_adj[head].push(idx);
            list.push(Edge { tail, head, weight });
        }
        Ok(WeightedDigraph { n, edges: list, out_adj, in_adj })
    }

    /// Unit-weight digraph from `(tail, head)` pairs.
    pub fn unweighted(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        WeightedDigraph::new(n, edges.iter().map(|&(t, h)| (t, h, Rational::one())))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_adj[v]
    }

    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_adj[v].len()
    }

    /// `d_v`: the sum of the weights of edges leaving `v`.
    pub fn weighted_degree(&self, v: VertexId) -> Rational {
        self.out_adj[v].iter().fold(Rational::zero(), |acc, &e| acc + &self.edges[e].weight)
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn is_unit_weighted(&self) -> bool {
        self.edges.iter().all(|e| e.weight.is_one())
    }

    pub fn require_unit_weights(&self) -> Result<()> {
        match self.edges.iter().position(|e| !e.weight.is_one()) {
            None => Ok(()),
            Some(idx) => Err(Error::NonUnitWeights { edge: idx, weight: self.edges[idx].weight.to_string() }),
        }
    }

    /// Number of parallel copies of `tail -> head`.
    pub fn multiplicity(&self, tail: VertexId, head: VertexId) -> usize {
        self.out_adj[tail].iter().filter(|&&e| self.edges[e].head == head).count()
    }

    /// Weighted adjacency with parallel edges summed.
    pub fn adjacency(&self) -> Matrix {
        let mut a = Matrix::zeros(self.n, self.n);
        for e in &self.edges {
            a[(e.tail, e.head)] += &e.weight;
        }
        a
    }

    /// `L_G`: weighted out-degree on the diagonal, minus summed edge weights
    /// off the diagonal. Every row sums to zero.
    pub fn laplacian(&self) -> Matrix {
        let mut l = Matrix::zeros(self.n, self.n);
        for e in &self.edges {
            l[(e.tail, e.tail)] += &e.weight;
            l[(e.tail, e.head)] -= &e.weight;
        }
        l
    }

    /// Same edges, each edge `u -> v` reweighted to `vertex_weights[v]`.
    pub fn with_induced_weights(&self, vertex_weights: &[Rational]) -> Result<Self> {
        if vertex_weights.len() != self.n {
            return Err(Error::WeightCount { got: vertex_weights.len(), expected: self.n });
        }
        WeightedDigraph::new(self.n, self.edges.iter().map(|e| (e.tail, e.head, vertex_weights[e.head].clone())))
    }

    /// Checks that every edge `u -> v` carries `vertex_weights[v]`.
    pub fn check_induced_weights(&self, vertex_weights: &[Rational]) -> Result<()> {
        if vertex_weights.len() != self.n {
            return Err(Error::WeightCount { got: vertex_weights.len(), expected: self.n });
        }
        match self.edges.iter().position(|e| e.weight != vertex_weights[e.head]) {
            None => Ok(()),
            Some(edge) => Err(Error::WeightsNotInduced { edge }),
        }
    }

    fn reachable(&self, start: VertexId, forward: bool) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            let adj = if forward { &self.out_adj[v] } else { &self.in_adj[v] };
            for &e in adj {
                let w = if forward { self.edges[e].head } else { self.edges[e].tail };
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Every vertex reaches every other. The empty digraph is not strongly
    /// connected.
    pub fn is_strongly_connected(&self) -> bool {
        self.n > 0 && self.reachable(0, true).into_iter().all(|x| x) && self.reachable(0, false).into_iter().all(|x| x)
    }

    /// Strongly connected, at least one edge, and in-degree equals
    /// out-degree at every vertex.
    pub fn is_eulerian(&self) -> bool {
        !self.edges.is_empty()
            && (0..self.n).all(|v| self.out_degree(v) == self.in_degree(v))
            && self.is_strongly_connected()
    }

    /// `𝓛(G)`: one vertex per edge of `G`, an edge `e -> f` whenever
    /// `head(e) = tail(f)`.
    ///
    /// The line edge `e -> f` is weighted by the weight of `f` in `G`, or by
    /// `vertex_weights[f]` when given.
    pub fn line_digraph(&self, vertex_weights: Option<&[Rational]>) -> Result<LineDigraph> {
        if let Some(w) = vertex_weights {
            if w.len() != self.edges.len() {
                return Err(Error::WeightCount { got: w.len(), expected: self.edges.len() });
            }
        }
        let mut line_edges = Vec::new();
        for (e, edge) in self.edges.iter().enumerate() {
            for &f in &self.out_adj[edge.head] {
                let w = match vertex_weights {
                    Some(w) => w[f].clone(),
                    None => self.edges[f].weight.clone(),
                };
                line_edges.push((e, f, w));
            }
        }
        Ok(LineDigraph {
            line: WeightedDigraph::new(self.edges.len(), line_edges)?,
            vertex_of_edge: (0..self.edges.len()).collect(),
        })
    }

    /// `G(k)`: each vertex `i` becomes the class `{i*k, .., i*k + k - 1}` and
    /// each edge `i -> j` becomes all `k^2` edges between the two classes.
    pub fn blow_up(&self, k: usize) -> Result<BlowUp> {
        if k == 0 {
            return Err(Error::HypothesisViolated("blow-up factor must be positive".into()));
        }
        self.require_unit_weights()?;
        let mut edges = Vec::with_capacity(self.edges.len() * k * k);
        for e in &self.edges {
            for a in 0..k {
                for b in 0..k {
                    edges.push((e.tail * k + a, e.head * k + b));
                }
            }
        }
        Ok(BlowUp {
            graph: WeightedDigraph::unweighted(self.n * k, &edges)?,
            class_of: (0..self.n * k).map(|u| u / k).collect(),
            k,
        })
    }
}

/// Result of [`WeightedDigraph::line_digraph`].
#[derive(Clone, Debug)]
pub struct LineDigraph {
    pub line: WeightedDigraph,
    /// Vertex of the line digraph standing for each edge of the base graph.
    pub vertex_of_edge: Vec<VertexId>,
}

/// Result of [`WeightedDigraph::blow_up`].
#[derive(Clone, Debug)]
pub struct BlowUp {
    pub graph: WeightedDigraph,
    /// Base vertex whose class each blown-up vertex belongs to.
    pub class_of: Vec<VertexId>,
    pub k: usize,
}

impl BlowUp {
    /// Members of the class of base vertex `i`.
    pub fn class(&self, i: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        i * self.k..(i + 1) * self.k
    }
}

/// Simple undirected graph with positive weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    n: usize,
    edges: Vec<(VertexId, VertexId, Rational)>,
}

impl UndirectedGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (VertexId, VertexId, Rational)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let mut list = Vec::new();
        for (idx, (a, b, w)) in edges.into_iter().enumerate() {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop { edge: idx, vertex: a });
            }
            if w <= Rational::zero() {
                return Err(Error::NonPositiveWeight { edge: idx, weight: w.to_string() });
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::DuplicateEdge(a.min(b), a.max(b)));
            }
            list.push((a, b, w));
        }
        Ok(UndirectedGraph { n, edges: list })
    }

    pub fn unweighted(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        UndirectedGraph::new(n, edges.iter().map(|&(a, b)| (a, b, Rational::one())))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(VertexId, VertexId, Rational)] {
        &self.edges
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|(a, b, _)| *a == v || *b == v).count()
    }

    /// `H_0`: each edge `{i, j}` of weight `w` becomes `i -> j` and `j -> i`,
    /// both of weight `w`.
    pub fn bidirect(&self) -> WeightedDigraph {
        let edges = self.edges.iter().flat_map(|(a, b, w)| [(*a, *b, w.clone()), (*b, *a, w.clone())]);
        WeightedDigraph::new(self.n, edges).expect("simple undirected graph bidirects cleanly")
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.bidirect().is_strongly_connected()
    }
}
