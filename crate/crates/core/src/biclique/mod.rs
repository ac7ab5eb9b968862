//! Biclique partitions and the reduced digraphs built from them.
//!
//! A biclique `Q` has a tail side `Q⁽¹⁾` and a head side `Q⁽²⁾` and contains
//! every edge from the first to the second. A partition covers each edge of
//! the host exactly once. Sides are multisets: listing a vertex twice
//! contributes two parallel copies of each of its edges, which is how
//! partitions of multigraphs are expressed.
//!
//! The biclique digraph has one vertex per biclique and an edge `Q_i -> Q_j`
//! whenever `Q_i⁽²⁾` meets `Q_j⁽¹⁾`. [`omega_digraph`] weights it from
//! vertex weights inducing the host's edge weights; [`theta_digraph`] is the
//! unit-weight specialization.

mod identities;

pub use identities::*;

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{BlowUp, LineDigraph, VertexId, WeightedDigraph};
use crate::rational::{from_usize, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Biclique {
    pub tails: Vec<VertexId>,
    pub heads: Vec<VertexId>,
}

impl Biclique {
    pub fn new(tails: Vec<VertexId>, heads: Vec<VertexId>) -> Self {
        Biclique { tails, heads }
    }
}

/// A validated biclique partition of its host digraph.
/// `(i, j, [(u, m)])`: shared vertices `u` of `Q_i⁽²⁾` and `Q_j⁽¹⁾` with multiplicity products `m`.
type Intersection = (usize, usize, Vec<(VertexId, usize)>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BicliquePartition {
    host: WeightedDigraph,
    bicliques: Vec<Biclique>,
    // tail_mult[i][u] / head_mult[i][u]: multiplicity of u on each side of Q_i
    tail_mult: Vec<Vec<usize>>,
    head_mult: Vec<Vec<usize>>,
}

/// Check that `bicliques` partitions the edges of `g` and wrap it.
///
/// Every claimed pair must be an edge of `g`, and each `(tail, head)` pair
/// must be covered exactly as many times as `g` has parallel copies of it.
pub fn validate_partition(g: &WeightedDigraph, bicliques: Vec<Biclique>) -> Result<BicliquePartition> {
    let n = g.vertex_count();
    let mut tail_mult = Vec::with_capacity(bicliques.len());
    let mut head_mult = Vec::with_capacity(bicliques.len());
    for (i, q) in bicliques.iter().enumerate() {
        if q.tails.is_empty() || q.heads.is_empty() {
            return Err(Error::EmptyBiclique(i));
        }
        let mut tm = vec![0; n];
        let mut hm = vec![0; n];
        for &u in &q.tails {
            g.check_vertex(u)?;
            tm[u] += 1;
        }
        for &v in &q.heads {
            g.check_vertex(v)?;
            hm[v] += 1;
        }
        tail_mult.push(tm);
        head_mult.push(hm);
    }

    let mut present: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
    for e in g.edges() {
        *present.entry((e.tail, e.head)).or_default() += 1;
    }
    let mut covered: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
    for (i, q) in bicliques.iter().enumerate() {
        for u in distinct(&q.tails) {
            for v in distinct(&q.heads) {
                if !present.contains_key(&(u, v)) {
                    return Err(Error::NotABiclique { biclique: i, tail: u, head: v });
                }
                *covered.entry((u, v)).or_default() += tail_mult[i][u] * head_mult[i][v];
            }
        }
    }
    for (&(tail, head), &c) in &covered {
        let p = present[&(tail, head)];
        if c > p {
            return Err(Error::CoverageOverlap { tail, head, covered: c, present: p });
        }
    }
    for (&(tail, head), &p) in &present {
        let c = covered.get(&(tail, head)).copied().unwrap_or(0);
        if c < p {
            return Err(Error::CoverageGap { tail, head, covered: c, present: p });
        }
    }
    Ok(BicliquePartition { host: g.clone(), bicliques, tail_mult, head_mult })
}

fn distinct(side: &[VertexId]) -> Vec<VertexId> {
    let mut v = side.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

impl BicliquePartition {
    pub fn host(&self) -> &WeightedDigraph {
        &self.host
    }

    pub fn bicliques(&self) -> &[Biclique] {
        &self.bicliques
    }

    pub fn len(&self) -> usize {
        self.bicliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bicliques.is_empty()
    }

    /// Multiplicity of `u` in `Q_i⁽¹⁾`.
    pub fn tail_multiplicity(&self, i: usize, u: VertexId) -> usize {
        self.tail_mult[i][u]
    }

    /// Multiplicity of `u` in `Q_i⁽²⁾`.
    pub fn head_multiplicity(&self, i: usize, u: VertexId) -> usize {
        self.head_mult[i][u]
    }

    /// `|Q_i⁽²⁾|`, counted with multiplicity.
    pub fn head_size(&self, i: usize) -> usize {
        self.bicliques[i].heads.len()
    }

    /// `|Q_i⁽¹⁾|`, counted with multiplicity.
    pub fn tail_size(&self, i: usize) -> usize {
        self.bicliques[i].tails.len()
    }

    /// Biclique digraph structure: `(i, j, [(u, m)])` for each pair with
    /// `Q_i⁽²⁾ ∩ Q_j⁽¹⁾ ≠ ∅`, where `m` is the product of `u`'s
    /// multiplicities on the two sides.
    fn intersections(&self) -> Vec<Intersection> {
        let n = self.host.vertex_count();
        let r = self.len();
        let mut out = Vec::new();
        for i in 0..r {
            for j in 0..r {
                let common: Vec<(VertexId, usize)> = (0..n)
                    .filter_map(|u| {
                        let m = self.head_mult[i][u] * self.tail_mult[j][u];
                        (m > 0).then_some((u, m))
                    })
                    .collect();
                if !common.is_empty() {
                    out.push((i, j, common));
                }
            }
        }
        out
    }
}

impl fmt::Display for BicliquePartition {
    /// Partition file format: one `Q <id>: [tails] -> [heads]` line each.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, q) in self.bicliques.iter().enumerate() {
            writeln!(f, "Q {i}: {} -> {}", list(&q.tails), list(&q.heads))?;
        }
        Ok(())
    }
}

fn list(vs: &[VertexId]) -> String {
    let items: Vec<String> = vs.iter().map(ToString::to_string).collect();
    format!("[{}]", items.join(", "))
}

/// One biclique `({u}, out-neighbours of u)` per vertex with out-edges.
/// Parallel edges repeat the head.
pub fn star_partition(g: &WeightedDigraph) -> BicliquePartition {
    let bicliques = (0..g.vertex_count())
        .filter(|&u| g.out_degree(u) > 0)
        .map(|u| Biclique::new(vec![u], g.out_edges(u).iter().map(|&e| g.edge(e).head).collect()))
        .collect();
    validate_partition(g, bicliques).expect("star partition is always valid")
}

/// The line digraph together with its natural partition.
#[derive(Clone, Debug)]
pub struct NaturalLinePartition {
    pub line: LineDigraph,
    pub partition: BicliquePartition,
    /// Base vertex each biclique was built around.
    pub vertex_of_biclique: Vec<VertexId>,
}

/// Builds `𝓛(G)` and partitions it into the bicliques
/// `({e : head(e) = i}, {f : tail(f) = i})`, one per vertex `i` of `G` with
/// both in- and out-edges.
pub fn natural_line_partition(g: &WeightedDigraph) -> Result<NaturalLinePartition> {
    let line = g.line_digraph(None)?;
    let mut bicliques = Vec::new();
    let mut vertex_of_biclique = Vec::new();
    for i in 0..g.vertex_count() {
        if g.in_degree(i) > 0 && g.out_degree(i) > 0 {
            let tails = g.in_edges(i).iter().map(|&e| line.vertex_of_edge[e]).collect();
            let heads = g.out_edges(i).iter().map(|&f| line.vertex_of_edge[f]).collect();
            bicliques.push(Biclique::new(tails, heads));
            vertex_of_biclique.push(i);
        }
    }
    let partition = validate_partition(&line.line, bicliques)?;
    Ok(NaturalLinePartition { line, partition, vertex_of_biclique })
}

/// The partition of `G(k)` whose bicliques are the blow-ups of those of `base`.
pub fn blow_up_partition(blow: &BlowUp, base: &BicliquePartition) -> Result<BicliquePartition> {
    let expand = |side: &[VertexId]| side.iter().flat_map(|&u| blow.class(u)).collect::<Vec<_>>();
    let bicliques = base.bicliques().iter().map(|q| Biclique::new(expand(&q.tails), expand(&q.heads))).collect();
    validate_partition(&blow.graph, bicliques)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionKind {
    /// Weighted by vertex weights inducing the host's edge weights.
    Omega,
    /// Unit-weight specialization.
    Theta,
}

/// A biclique digraph with its edge weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedDigraph {
    pub digraph: WeightedDigraph,
    pub kind: ReductionKind,
}

/// `Ω(ε)`: edge `Q_i -> Q_j` weighted `w(Q_j) · Σ_{u ∈ Q_i⁽²⁾ ∩ Q_j⁽¹⁾} w_u / d_u`
/// with `w(Q_j) = Σ_{u ∈ Q_j⁽²⁾} w_u` and `d_u` the weighted out-degree.
///
/// The host's edge weights must be induced by `vertex_weights`.
pub fn omega_digraph(partition: &BicliquePartition, vertex_weights: &[Rational]) -> Result<ReducedDigraph> {
    let host = partition.host();
    host.check_induced_weights(vertex_weights)?;
    let degrees: Vec<Rational> = (0..host.vertex_count()).map(|u| host.weighted_degree(u)).collect();
    let class_weight = head_weights(partition, vertex_weights);
    let edges = partition.intersections().into_iter().map(|(i, j, common)| {
        let sum =
            common.iter().fold(Rational::zero(), |acc, &(u, m)| acc + from_usize(m) * &vertex_weights[u] / &degrees[u]);
        (i, j, &class_weight[j] * sum)
    });
    Ok(ReducedDigraph {
        digraph: WeightedDigraph::new(partition.len(), edges.collect::<Vec<_>>())?,
        kind: ReductionKind::Omega,
    })
}

/// `Θ(ε)`: edge `Q_i -> Q_j` weighted `|Q_j⁽²⁾| · Σ_{u ∈ Q_i⁽²⁾ ∩ Q_j⁽¹⁾} 1 / d_u⁺`.
/// Depends only on the host's edge structure.
pub fn theta_digraph(partition: &BicliquePartition) -> ReducedDigraph {
    let host = partition.host();
    let edges: Vec<_> = partition
        .intersections()
        .into_iter()
        .map(|(i, j, common)| {
            let sum = common
                .iter()
                .fold(Rational::zero(), |acc, &(u, m)| acc + Rational::new(m.into(), host.out_degree(u).into()));
            (i, j, from_usize(partition.head_size(j)) * sum)
        })
        .collect();
    ReducedDigraph {
        digraph: WeightedDigraph::new(partition.len(), edges).expect("theta weights are positive"),
        kind: ReductionKind::Theta,
    }
}

/// `w(Q_i) = Σ_{u ∈ Q_i⁽²⁾} w_u` for each biclique.
fn head_weights(partition: &BicliquePartition, vertex_weights: &[Rational]) -> Vec<Rational> {
    partition
        .bicliques()
        .iter()
        .map(|q| q.heads.iter().fold(Rational::zero(), |acc, &u| acc + &vertex_weights[u]))
        .collect()
}

fn unit_weights(n: usize) -> Vec<Rational> {
    vec![Rational::one(); n]
}
