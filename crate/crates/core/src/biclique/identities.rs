//! Spanning-tree reduction formulas over biclique partitions, and their
//! line-digraph and Schur-complement relatives.

use num::{BigInt, One, Zero};

use super::{head_weights, omega_digraph, star_partition, theta_digraph, unit_weights, BicliquePartition};
use crate::arborescence::{tree_enumerator, tree_enumerators};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, UndirectedGraph, VertexId, WeightedDigraph};
use crate::rational::{factorial, from_usize, pow, pow_signed, to_integer, Rational};

/// How the host's edge weights arise.
#[derive(Clone, Copy, Debug)]
pub enum Weighting<'a> {
    /// All weights 1; reductions go through `Θ(ε)` and plain out-degrees.
    Unit,
    /// Edge `u -> v` weighted `w_v`; reductions go through `Ω(ε)`.
    Induced(&'a [Rational]),
}

/// The ingredients both reduction formulas share.
struct Setup {
    reduced: WeightedDigraph,
    /// `w_u`, all ones for [`Weighting::Unit`].
    vertex_weight: Vec<Rational>,
    /// `d_u` or `d_u⁺`.
    degree: Vec<Rational>,
    /// `w(Q_i)` or `|Q_i⁽²⁾|`.
    class_weight: Vec<Rational>,
}

fn setup(partition: &BicliquePartition, weighting: Weighting<'_>) -> Result<Setup> {
    let host = partition.host();
    let n = host.vertex_count();
    if let Some(u) = (0..n).find(|&u| host.out_degree(u) == 0) {
        return Err(Error::ZeroOutDegree(u));
    }
    match weighting {
        Weighting::Unit => {
            host.check_induced_weights(&unit_weights(n))?;
            Ok(Setup {
                reduced: theta_digraph(partition).digraph,
                vertex_weight: unit_weights(n),
                degree: (0..n).map(|u| from_usize(host.out_degree(u))).collect(),
                class_weight: (0..partition.len()).map(|i| from_usize(partition.head_size(i))).collect(),
            })
        }
        Weighting::Induced(w) => Ok(Setup {
            reduced: omega_digraph(partition, w)?.digraph,
            vertex_weight: w.to_vec(),
            degree: (0..n).map(|u| host.weighted_degree(u)).collect(),
            class_weight: head_weights(partition, w),
        }),
    }
}

fn product<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values.into_iter().fold(Rational::one(), |acc, v| acc * v)
}

/// `t_root(G)` from the reduced digraph:
///
/// `t_u(G) = w_u ∏_{v≠u} d_v / ∏_i w(Q_i) · Σ_{Q_i ∋ u as head} t_{Q_i}(Ω(ε))`.
///
/// Requires every host vertex to have out-edges, and `root` to lie on the
/// head side of some biclique.
pub fn tree_enum_via_partition(
    partition: &BicliquePartition,
    weighting: Weighting<'_>,
    root: VertexId,
) -> Result<Rational> {
    let host = partition.host();
    host.check_vertex(root)?;
    let s = setup(partition, weighting)?;
    let covering: Vec<usize> = (0..partition.len()).filter(|&i| partition.head_multiplicity(i, root) > 0).collect();
    if covering.is_empty() {
        return Err(Error::RootNotCovered(root));
    }
    let mut sum = Rational::zero();
    for i in covering {
        sum += from_usize(partition.head_multiplicity(i, root)) * tree_enumerator(&s.reduced, i)?;
    }
    let others = product(s.degree.iter().enumerate().filter(|&(v, _)| v != root).map(|(_, d)| d));
    Ok(&s.vertex_weight[root] * others / product(&s.class_weight) * sum)
}

/// `t_{Q_i}(Ω(ε))` from the host:
///
/// `t_{Q_i}(Ω(ε)) = ∏_j w(Q_j) / ∏_u d_u · Σ_{u ∈ Q_i⁽¹⁾} t_u(G)`.
pub fn partition_tree_enum_from_host(
    partition: &BicliquePartition,
    weighting: Weighting<'_>,
    biclique: usize,
) -> Result<Rational> {
    if biclique >= partition.len() {
        return Err(Error::IndexOutOfRange { index: biclique, dim: partition.len() });
    }
    let s = setup(partition, weighting)?;
    let host = partition.host();
    let mut sum = Rational::zero();
    for u in 0..host.vertex_count() {
        let m = partition.tail_multiplicity(biclique, u);
        if m > 0 {
            sum += from_usize(m) * tree_enumerator(host, u)?;
        }
    }
    Ok(product(&s.class_weight) / product(&s.degree) * sum)
}

/// Direct minor of the reduced digraph, the other side of
/// [`partition_tree_enum_from_host`].
pub fn reduced_tree_enum(partition: &BicliquePartition, weighting: Weighting<'_>, biclique: usize) -> Result<Rational> {
    tree_enumerator(&setup(partition, weighting)?.reduced, biclique)
}

/// Spanning-tree and Eulerian-circuit counts of an Eulerian digraph from
/// `t_{Q_i}(Θ(ε))` alone:
///
/// `κ = ∏ d_v⁺ / ∏_j |Q_j⁽²⁾| · t_{Q_i}(Θ) / |Q_i⁽¹⁾|`, and the circuit count
/// uses `∏ d_v⁺!` in place of `∏ d_v⁺`.
pub fn eulerian_count_via_partition(partition: &BicliquePartition, biclique: usize) -> Result<(BigInt, BigInt)> {
    let host = partition.host();
    host.require_unit_weights()?;
    if !host.is_eulerian() {
        return Err(Error::NotEulerian);
    }
    if biclique >= partition.len() {
        return Err(Error::IndexOutOfRange { index: biclique, dim: partition.len() });
    }
    let theta = theta_digraph(partition).digraph;
    let t = tree_enumerator(&theta, biclique)?;
    let heads = (0..partition.len()).fold(Rational::one(), |acc, j| acc * from_usize(partition.head_size(j)));
    let common = t / heads / from_usize(partition.tail_size(biclique));
    let degrees = (0..host.vertex_count()).fold(Rational::one(), |acc, v| acc * from_usize(host.out_degree(v)));
    let factorials = (0..host.vertex_count()).fold(BigInt::one(), |acc, v| acc * factorial(host.out_degree(v)));
    let kappa = degrees * &common;
    let circuits = Rational::from_integer(factorials) * common;
    let positive_int = |r: Rational| match to_integer(&r) {
        Some(z) if z > BigInt::zero() => Ok(z),
        _ => Err(Error::NonIntegerResult(r.to_string())),
    };
    Ok((positive_int(kappa)?, positive_int(circuits)?))
}

fn require_in_and_out(g: &WeightedDigraph) -> Result<()> {
    match (0..g.vertex_count()).find(|&u| g.out_degree(u) == 0 || g.in_degree(u) == 0) {
        Some(u) => Err(Error::DegreeHypothesisViolated(u)),
        None => Ok(()),
    }
}

fn require_in_edges(g: &WeightedDigraph) -> Result<()> {
    match (0..g.vertex_count()).find(|&u| g.in_degree(u) == 0) {
        Some(u) => Err(Error::InDegreeZero(u)),
        None => Ok(()),
    }
}

/// Spanning trees of `𝓛(G)` rooted at edge `e = i -> j`, from counts on `G`:
///
/// `κ_e(𝓛(G)) = (κ_j − Σ_{f → j, f ≠ e} κ_{tail(f)} / d_j⁺) ∏_v (d_v⁺)^{d_v⁻ − 1}`.
///
/// The sum runs over the other edges into `j`, which on simple digraphs is
/// the set of edges `k -> j` with `k ≠ i`.
pub fn line_tree_knuth(g: &WeightedDigraph, e: EdgeId) -> Result<Rational> {
    g.require_unit_weights()?;
    require_in_and_out(g)?;
    if e >= g.edge_count() {
        return Err(Error::IndexOutOfRange { index: e, dim: g.edge_count() });
    }
    let kappa = tree_enumerators(g);
    let j = g.edge(e).head;
    let others =
        g.in_edges(j).iter().filter(|&&f| f != e).fold(Rational::zero(), |acc, &f| acc + kappa.get(g.edge(f).tail));
    let bracket = kappa.get(j) - others / from_usize(g.out_degree(j));
    let scale = (0..g.vertex_count())
        .fold(Rational::one(), |acc, v| acc * pow(&from_usize(g.out_degree(v)), g.in_degree(v) - 1));
    Ok(bracket * scale)
}

/// Tree enumerator of the weighted line digraph rooted at `e = i -> j`:
///
/// `t_e(𝓛(G)) = w_e t_i(G) d_j^{d_j⁻ − 2} ∏_{v≠j} d_v^{d_v⁻ − 1}`,
///
/// where `𝓛(G)` carries the weights induced by the edge weights of `G`.
/// With `vertex_weights`, `G` is first reweighted so that each edge into
/// `v` weighs `vertex_weights[v]`. Requires `d_j⁻ ≥ 2`.
pub fn line_tree_levine(g: &WeightedDigraph, vertex_weights: Option<&[Rational]>, e: EdgeId) -> Result<Rational> {
    let reweighted;
    let g = match vertex_weights {
        Some(w) => {
            reweighted = g.with_induced_weights(w)?;
            &reweighted
        }
        None => g,
    };
    require_in_edges(g)?;
    if e >= g.edge_count() {
        return Err(Error::IndexOutOfRange { index: e, dim: g.edge_count() });
    }
    let (i, j) = (g.edge(e).tail, g.edge(e).head);
    if g.in_degree(j) < 2 {
        return Err(Error::HypothesisViolated(format!(
            "head {j} of edge {e} has in-degree {}, need at least 2",
            g.in_degree(j)
        )));
    }
    let mut value = &g.edge(e).weight * tree_enumerator(g, i)?;
    for v in 0..g.vertex_count() {
        let exponent = if v == j { g.in_degree(v) - 2 } else { g.in_degree(v) - 1 };
        value *= pow(&g.weighted_degree(v), exponent);
    }
    Ok(value)
}

/// Both sides of `Σ_e t_e(𝓛(G)) = ∏_v d_v^{d_v⁻ − 1} Σ_v t_v(G)`; the left
/// side is computed from minors of the line digraph, the right from `G`.
pub fn line_sum_identity_check(
    g: &WeightedDigraph,
    vertex_weights: Option<&[Rational]>,
) -> Result<(Rational, Rational)> {
    let reweighted;
    let g = match vertex_weights {
        Some(w) => {
            reweighted = g.with_induced_weights(w)?;
            &reweighted
        }
        None => g,
    };
    require_in_edges(g)?;
    let line = g.line_digraph(None)?.line;
    let lhs = tree_enumerators(&line).total();
    let scale =
        (0..g.vertex_count()).fold(Rational::one(), |acc, v| acc * pow(&g.weighted_degree(v), g.in_degree(v) - 1));
    let rhs = scale * tree_enumerators(g).total();
    Ok((lhs, rhs))
}

/// Both sides of the Schur-complement spanning tree identity for the
/// split `V = V1 ∪ V2` and a vertex `u ∈ V1`:
///
/// `d_u t_u(G1) − Σ_{v∈V1, v→u} w_vu t_v(G1) = det L1 / det L2 · Σ_{v∈V2, v→u} w_vu t_v(G2)`,
///
/// where `L_{G1}` and `L_{G2}` are the Schur complements of the principal
/// blocks `L2` and `L1` of `L_G`, and `t_v` is read as the principal minor
/// at `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurIdentity {
    pub lhs: Rational,
    pub rhs: Rational,
}

pub fn schur_partition_identity(g: &WeightedDigraph, v1: &[VertexId], u: VertexId) -> Result<SchurIdentity> {
    let n = g.vertex_count();
    let mut in_v1 = vec![false; n];
    for &v in v1 {
        g.check_vertex(v)?;
        if in_v1[v] {
            return Err(Error::HypothesisViolated(format!("vertex {v} listed twice in V1")));
        }
        in_v1[v] = true;
    }
    g.check_vertex(u)?;
    if !in_v1[u] {
        return Err(Error::HypothesisViolated(format!("vertex {u} is not in V1")));
    }
    let part1: Vec<VertexId> = (0..n).filter(|&v| in_v1[v]).collect();
    let part2: Vec<VertexId> = (0..n).filter(|&v| !in_v1[v]).collect();
    let l = g.laplacian();
    let det1 = l.select(&part1, &part1)?.det()?;
    let det2 = l.select(&part2, &part2)?.det()?;
    if det1.is_zero() || det2.is_zero() {
        return Err(Error::SingularBlock);
    }
    let s1 = l.schur_complement(&part2)?;
    let s2 = l.schur_complement(&part1)?;
    let position = |part: &[VertexId], v: VertexId| part.binary_search(&v).expect("vertex in part");
    let t1 = |v: VertexId| {
        let p = position(&part1, v);
        s1.minor_det(&[p], &[p])
    };
    let t2 = |v: VertexId| {
        let p = position(&part2, v);
        s2.minor_det(&[p], &[p])
    };

    let mut lhs = g.weighted_degree(u) * t1(u)?;
    let mut rhs_sum = Rational::zero();
    for &e in g.in_edges(u) {
        let edge = g.edge(e);
        if in_v1[edge.tail] {
            lhs -= &edge.weight * t1(edge.tail)?;
        } else {
            rhs_sum += &edge.weight * t2(edge.tail)?;
        }
    }
    Ok(SchurIdentity { lhs, rhs: det1 / det2 * rhs_sum })
}

/// Number of spanning trees of a connected undirected graph, computed from
/// `t_{Q_0}(Θ(ε))` for a partition `ε` of its bidirected digraph (the star
/// partition when `None`).
pub fn undirected_tree_count(h: &UndirectedGraph, partition: Option<&BicliquePartition>) -> Result<BigInt> {
    if !h.is_connected() {
        return Err(Error::Disconnected);
    }
    let h0 = h.bidirect();
    if h0.vertex_count() == 1 {
        return Ok(BigInt::one());
    }
    let owned;
    let partition = match partition {
        Some(p) => {
            if p.host() != &h0 {
                return Err(Error::HypothesisViolated("partition is not of the bidirected graph".into()));
            }
            p
        }
        None => {
            owned = star_partition(&h0);
            &owned
        }
    };
    Ok(eulerian_count_via_partition(partition, 0)?.0)
}

/// `κ_u(G(k)) = k^{nk−2} ∏_v (d_v⁺)^{k−1} κ_u(G)`, the closed form for
/// trees of the `k`-blow-up rooted in the class of `root`.
pub fn blow_up_tree_count(g: &WeightedDigraph, k: usize, root: VertexId) -> Result<Rational> {
    g.require_unit_weights()?;
    let n = g.vertex_count();
    let kr = from_usize(k);
    let power = pow_signed(&kr, (n * k) as i64 - 2)
        .ok_or_else(|| Error::HypothesisViolated("blow-up factor must be positive".into()))?;
    let degrees = (0..n).fold(Rational::one(), |acc, v| acc * pow(&from_usize(g.out_degree(v)), k - 1));
    Ok(power * degrees * tree_enumerator(g, root)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biclique::natural_line_partition;
    use crate::fixtures::*;
    use crate::rational::{int, rat};

    #[test]
    fn via_partition_examples() {
        let p = star_partition(&c3());
        assert_eq!(tree_enum_via_partition(&p, Weighting::Unit, 0).unwrap(), int(1));
        let p = star_partition(&k3_bidirected());
        assert_eq!(tree_enum_via_partition(&p, Weighting::Unit, 0).unwrap(), int(3));

        let w = [int(1), int(2), int(4)];
        let g = c3().with_induced_weights(&w).unwrap();
        let p = star_partition(&g);
        for root in 0..3 {
            assert_eq!(
                tree_enum_via_partition(&p, Weighting::Induced(&w), root).unwrap(),
                tree_enumerator(&g, root).unwrap()
            );
        }
    }

    #[test]
    fn via_partition_errors() {
        let p = star_partition(&c3_open());
        assert_eq!(tree_enum_via_partition(&p, Weighting::Unit, 0), Err(Error::ZeroOutDegree(2)));
        // vertex 0 of this digraph has no in-edges
        let g = WeightedDigraph::unweighted(3, &[(0, 1), (1, 2), (2, 1)]).unwrap();
        assert_eq!(tree_enum_via_partition(&star_partition(&g), Weighting::Unit, 0), Err(Error::RootNotCovered(0)));
        let w = [int(1), int(2), int(4)];
        assert_eq!(
            tree_enum_via_partition(&star_partition(&c3()), Weighting::Induced(&w), 0).unwrap_err().kind(),
            "WeightsNotInduced"
        );
    }

    #[test]
    fn from_host_examples() {
        let p = star_partition(&c3());
        assert_eq!(partition_tree_enum_from_host(&p, Weighting::Unit, 0).unwrap(), int(1));
        let p = star_partition(&k3_bidirected());
        assert_eq!(partition_tree_enum_from_host(&p, Weighting::Unit, 0).unwrap(), int(3));
        let nl = natural_line_partition(&k3_bidirected()).unwrap();
        assert_eq!(
            partition_tree_enum_from_host(&nl.partition, Weighting::Unit, 0).unwrap(),
            reduced_tree_enum(&nl.partition, Weighting::Unit, 0).unwrap()
        );
    }

    #[test]
    fn eulerian_via_partition_examples() {
        let p = star_partition(&c3());
        for i in 0..3 {
            assert_eq!(eulerian_count_via_partition(&p, i).unwrap(), (BigInt::from(1), BigInt::from(1)));
        }
        let p = star_partition(&k3_bidirected());
        for i in 0..3 {
            assert_eq!(eulerian_count_via_partition(&p, i).unwrap(), (BigInt::from(3), BigInt::from(3)));
        }
        let p = star_partition(&m2());
        assert_eq!(eulerian_count_via_partition(&p, 0).unwrap(), (BigInt::from(2), BigInt::from(2)));
        assert_eq!(eulerian_count_via_partition(&star_partition(&c3_open()), 0), Err(Error::NotEulerian));
    }

    #[test]
    fn knuth_examples() {
        assert_eq!(line_tree_knuth(&c3(), 0).unwrap(), int(1));
        assert_eq!(line_tree_knuth(&k3_bidirected(), 0).unwrap(), int(12));
        assert_eq!(line_tree_knuth(&d2(), 0).unwrap(), int(1));
        assert_eq!(line_tree_knuth(&c3_open(), 0), Err(Error::DegreeHypothesisViolated(0)));
    }

    #[test]
    fn levine_examples() {
        assert_eq!(line_tree_levine(&k3_bidirected(), None, 0).unwrap(), int(12));
        let w = [int(1), int(1), int(2)];
        let g = k3_bidirected().with_induced_weights(&w).unwrap();
        let line = g.line_digraph(None).unwrap().line;
        for e in 0..6 {
            assert_eq!(line_tree_levine(&k3_bidirected(), Some(&w), e).unwrap(), tree_enumerator(&line, e).unwrap());
        }
        assert_eq!(line_tree_levine(&c3(), None, 0).unwrap_err().kind(), "HypothesisViolated");
    }

    #[test]
    fn line_sum_examples() {
        assert_eq!(line_sum_identity_check(&c3(), None).unwrap(), (int(3), int(3)));
        assert_eq!(line_sum_identity_check(&k3_bidirected(), None).unwrap(), (int(72), int(72)));
        // vertex 2 is a sink with two in-edges
        let g = WeightedDigraph::unweighted(3, &[(0, 1), (1, 0), (0, 2), (1, 2)]).unwrap();
        assert_eq!(line_sum_identity_check(&g, None).unwrap(), (int(0), int(0)));
        assert_eq!(line_sum_identity_check(&c3_open(), None), Err(Error::InDegreeZero(0)));
    }

    #[test]
    fn schur_examples() {
        let g = k3_bidirected();
        let s = schur_partition_identity(&g, &[0, 1], 0).unwrap();
        assert_eq!(s, SchurIdentity { lhs: rat(3, 2), rhs: rat(3, 2) });
        let s = schur_partition_identity(&g, &[0, 1], 1).unwrap();
        assert_eq!(s, SchurIdentity { lhs: rat(3, 2), rhs: rat(3, 2) });
        assert_eq!(schur_partition_identity(&g, &[0, 1, 2], 0).unwrap_err(), Error::SingularBlock);
        assert_eq!(schur_partition_identity(&g, &[1], 0).unwrap_err().kind(), "HypothesisViolated");
    }

    #[test]
    fn undirected_examples() {
        assert_eq!(undirected_tree_count(&triangle(), None).unwrap(), BigInt::from(3));
        let edge = UndirectedGraph::unweighted(2, &[(0, 1)]).unwrap();
        assert_eq!(undirected_tree_count(&edge, None).unwrap(), BigInt::from(1));
        assert_eq!(undirected_tree_count(&four_cycle(), None).unwrap(), BigInt::from(4));
        let split = UndirectedGraph::unweighted(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(undirected_tree_count(&split, None), Err(Error::Disconnected));
    }

    #[test]
    fn blow_up_closed_form_c3() {
        assert_eq!(blow_up_tree_count(&c3(), 2, 0).unwrap(), int(16));
        let b = c3().blow_up(2).unwrap();
        assert_eq!(tree_enumerator(&b.graph, 0).unwrap(), int(16));
    }
}
