//! Oriented spanning trees and Eulerian circuits.
//!
//! The fast paths read tree enumerators off Laplacian minors (all-minors
//! matrix-tree theorem) and count Eulerian circuits with the BEST formula.
//! The `enumerate_*` functions are exhaustive oracles for small inputs and
//! share no code with the determinant route.

use num::{BigInt, One, Zero};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, VertexId, WeightedDigraph};
use crate::rational::{factorial, Rational};

pub const DEFAULT_ARBORESCENCE_CAP: u128 = 10_000_000;
pub const DEFAULT_EULERIAN_EDGE_CAP: usize = 12;

/// An oriented spanning tree: every non-root vertex picks one outgoing edge,
/// and following the picks from anywhere ends at the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arborescence {
    pub root: VertexId,
    /// `chosen_edge[v]` is `None` exactly for the root.
    pub chosen_edge: Vec<Option<EdgeId>>,
}

impl Arborescence {
    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.chosen_edge.iter().flatten().copied()
    }

    /// Product of the edge weights.
    pub fn weight(&self, g: &WeightedDigraph) -> Rational {
        self.edges().fold(Rational::one(), |acc, e| acc * &g.edge(e).weight)
    }
}

/// `t_u(G)` for every root `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeEnumerator {
    values: Vec<Rational>,
}

impl TreeEnumerator {
    pub fn get(&self, root: VertexId) -> &Rational {
        &self.values[root]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn total(&self) -> Rational {
        self.values.iter().fold(Rational::zero(), |acc, v| acc + v)
    }
}

/// `t_root(G) = det L_G(root, root)`. Equals `κ_root(G)` for unit weights.
pub fn tree_enumerator(g: &WeightedDigraph, root: VertexId) -> Result<Rational> {
    g.check_vertex(root)?;
    g.laplacian().minor_det(&[root], &[root])
}

/// All tree enumerators at once, read off the diagonal of `adj(L_G)`.
pub fn tree_enumerators(g: &WeightedDigraph) -> TreeEnumerator {
    let adj = g.laplacian().adjugate().expect("Laplacian is square");
    TreeEnumerator { values: (0..g.vertex_count()).map(|v| adj[(v, v)].clone()).collect() }
}

/// Every arborescence rooted at `root`, with the default search cap.
pub fn enumerate_arborescences(g: &WeightedDigraph, root: VertexId) -> Result<Vec<Arborescence>> {
    enumerate_arborescences_capped(g, root, DEFAULT_ARBORESCENCE_CAP)
}

/// Exhaustive search over one outgoing edge per non-root vertex, pruning a
/// branch as soon as its picks close a cycle.
///
/// Fails with [`Error::TooLarge`] if the number of candidate choice
/// functions (the product of the non-root out-degrees) exceeds `cap`.
pub fn enumerate_arborescences_capped(g: &WeightedDigraph, root: VertexId, cap: u128) -> Result<Vec<Arborescence>> {
    g.check_vertex(root)?;
    let n = g.vertex_count();
    let mut candidates: u128 = 1;
    for v in (0..n).filter(|&v| v != root) {
        candidates = candidates.saturating_mul(g.out_degree(v) as u128);
    }
    if candidates > cap {
        return Err(Error::TooLarge { size: candidates.to_string(), cap: cap.to_string() });
    }
    let order: Vec<VertexId> = (0..n).filter(|&v| v != root).collect();
    let mut chosen = vec![None; n];
    let mut out = Vec::new();
    search_arborescences(g, root, &order, 0, &mut chosen, &mut out);
    Ok(out)
}

fn search_arborescences(
    g: &WeightedDigraph,
    root: VertexId,
    order: &[VertexId],
    depth: usize,
    chosen: &mut Vec<Option<EdgeId>>,
    out: &mut Vec<Arborescence>,
) {
    let Some(&v) = order.get(depth) else {
        out.push(Arborescence { root, chosen_edge: chosen.clone() });
        return;
    };
    for &e in g.out_edges(v) {
        chosen[v] = Some(e);
        if !closes_cycle(g, root, chosen, v) {
            search_arborescences(g, root, order, depth + 1, chosen, out);
        }
    }
    chosen[v] = None;
}

/// Follows picks from `v`; true if they return to `v` before reaching the
/// root or an undecided vertex.
fn closes_cycle(g: &WeightedDigraph, root: VertexId, chosen: &[Option<EdgeId>], v: VertexId) -> bool {
    let mut x = v;
    while let Some(e) = chosen[x] {
        x = g.edge(e).head;
        if x == v {
            return true;
        }
        if x == root {
            return false;
        }
    }
    false
}

/// Sum of weight products over [`enumerate_arborescences`].
pub fn arborescence_weight_sum(g: &WeightedDigraph, root: VertexId) -> Result<Rational> {
    Ok(enumerate_arborescences(g, root)?.iter().fold(Rational::zero(), |acc, t| acc + t.weight(g)))
}

/// BEST formula: `κ_u(G) · ∏_v (d_v^+ - 1)!` for any root `u`.
///
/// Circuits are counted up to cyclic rotation; parallel edges are distinct.
pub fn count_eulerian_circuits(g: &WeightedDigraph) -> Result<BigInt> {
    g.require_unit_weights()?;
    if !g.is_eulerian() {
        return Err(Error::NotEulerian);
    }
    let kappa = tree_enumerator(g, 0)?;
    debug_assert!(kappa.is_integer());
    let product = (0..g.vertex_count()).map(|v| factorial(g.out_degree(v) - 1)).fold(BigInt::one(), |acc, f| acc * f);
    Ok(kappa.to_integer() * product)
}

pub fn enumerate_eulerian_circuits(g: &WeightedDigraph) -> Result<u64> {
    enumerate_eulerian_circuits_capped(g, DEFAULT_EULERIAN_EDGE_CAP)
}

/// Backtracking count of Eulerian trails starting with edge 0 and returning
/// to its tail. Every circuit uses edge 0 exactly once, so this counts
/// circuits up to rotation.
pub fn enumerate_eulerian_circuits_capped(g: &WeightedDigraph, max_edges: usize) -> Result<u64> {
    if !g.is_eulerian() {
        return Err(Error::NotEulerian);
    }
    let m = g.edge_count();
    if m > max_edges {
        return Err(Error::TooLarge { size: format!("{m} edges"), cap: format!("{max_edges} edges") });
    }
    let mut used = vec![false; m];
    used[0] = true;
    Ok(extend_trail(g, g.edge(0).tail, g.edge(0).head, 1, &mut used))
}

fn extend_trail(g: &WeightedDigraph, start: VertexId, at: VertexId, placed: usize, used: &mut [bool]) -> u64 {
    if placed == used.len() {
        return u64::from(at == start);
    }
    let mut count = 0;
    for &e in g.out_edges(at) {
        if !used[e] {
            used[e] = true;
            count += extend_trail(g, start, g.edge(e).head, placed + 1, used);
            used[e] = false;
        }
    }
    count
}
