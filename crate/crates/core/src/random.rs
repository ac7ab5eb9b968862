//! Seeded instance generators for property checks and verification suites.
//!
//! Every generator draws only from the supplied RNG, so a seed fixes the
//! instance. [`instance_rng`] derives independent streams per instance.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::biclique::{validate_partition, Biclique, BicliquePartition};
use crate::graph::{UndirectedGraph, VertexId, WeightedDigraph};
use crate::rational::{int, rat, Rational};

/// Stream `index` of the generator seeded with `seed`.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// `p/q` with `p ∈ 1..=9`, `q ∈ 1..=4`.
pub fn random_weight<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(1..=9), rng.gen_range(1..=4))
}

/// Integers drawn uniformly from `1..=max`.
pub fn random_vertex_weights<R: Rng>(rng: &mut R, n: usize, max: i64) -> Vec<Rational> {
    (0..n).map(|_| int(rng.gen_range(1..=max))).collect()
}

fn weigh<R: Rng>(rng: &mut R, pairs: Vec<(VertexId, VertexId)>, weighted: bool) -> Vec<(VertexId, VertexId, Rational)> {
    pairs.into_iter().map(|(t, h)| (t, h, if weighted { random_weight(rng) } else { int(1) })).collect()
}

fn build<R: Rng>(rng: &mut R, n: usize, pairs: Vec<(VertexId, VertexId)>, weighted: bool) -> WeightedDigraph {
    let edges = weigh(rng, pairs, weighted);
    WeightedDigraph::new(n, edges).expect("generated edges are valid")
}

/// Simple digraph: each ordered pair is an edge with probability `p`.
pub fn random_digraph<R: Rng>(rng: &mut R, n: usize, p: f64, weighted: bool) -> WeightedDigraph {
    let pairs = simple_pairs(rng, n, p);
    build(rng, n, pairs, weighted)
}

/// Like [`random_digraph`], then one edge is added from every vertex that
/// has none. Needs `n ≥ 2`.
pub fn random_digraph_min_out<R: Rng>(rng: &mut R, n: usize, p: f64, weighted: bool) -> WeightedDigraph {
    let mut pairs = simple_pairs(rng, n, p);
    for t in 0..n {
        if !pairs.iter().any(|&(a, _)| a == t) {
            let h = other_vertex(rng, n, t);
            pairs.push((t, h));
        }
    }
    build(rng, n, pairs, weighted)
}

fn simple_pairs<R: Rng>(rng: &mut R, n: usize, p: f64) -> Vec<(VertexId, VertexId)> {
    let mut pairs = Vec::new();
    for t in 0..n {
        for h in (0..n).filter(|&h| h != t) {
            if rng.gen_bool(p) {
                pairs.push((t, h));
            }
        }
    }
    pairs
}

fn other_vertex<R: Rng>(rng: &mut R, n: usize, not: VertexId) -> VertexId {
    let h = rng.gen_range(0..n - 1);
    if h >= not {
        h + 1
    } else {
        h
    }
}

fn add_missing(pairs: &mut Vec<(VertexId, VertexId)>, extra: impl IntoIterator<Item = (VertexId, VertexId)>) {
    for e in extra {
        if !pairs.contains(&e) {
            pairs.push(e);
        }
    }
}

/// A Hamiltonian cycle in random order plus independent extra edges with
/// probability `p`. Simple, and strongly connected for `n ≥ 2`.
pub fn random_strongly_connected<R: Rng>(rng: &mut R, n: usize, p: f64, weighted: bool) -> WeightedDigraph {
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(rng);
    let mut pairs = simple_pairs(rng, n, p);
    if n >= 2 {
        add_missing(&mut pairs, (0..n).map(|i| (order[i], order[(i + 1) % n])));
    }
    pairs.sort_unstable();
    build(rng, n, pairs, weighted)
}

/// Every vertex has in- and out-degree at least one: a random derangement
/// supplies one edge out of and into each vertex. Simple, `n ≥ 2`.
pub fn random_min_in_out<R: Rng>(rng: &mut R, n: usize, p: f64, weighted: bool) -> WeightedDigraph {
    let mut pairs = simple_pairs(rng, n, p);
    add_missing(&mut pairs, random_derangement(rng, n).into_iter().enumerate());
    pairs.sort_unstable();
    build(rng, n, pairs, weighted)
}

fn random_derangement<R: Rng>(rng: &mut R, n: usize) -> Vec<VertexId> {
    loop {
        let mut perm: Vec<VertexId> = (0..n).collect();
        perm.shuffle(rng);
        if perm.iter().enumerate().all(|(i, &p)| i != p) {
            return perm;
        }
    }
}

/// Union of random cycles through distinct vertices, starting from a
/// Hamiltonian cycle. Parallel edges may appear. Stops before exceeding
/// `max_edges`; `n ≥ 2` and `max_edges ≥ n`.
pub fn random_eulerian<R: Rng>(rng: &mut R, n: usize, max_edges: usize) -> WeightedDigraph {
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(rng);
    let mut pairs: Vec<(VertexId, VertexId)> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
    let extra_cycles = rng.gen_range(0..=3);
    for _ in 0..extra_cycles {
        let len = rng.gen_range(2..=n);
        if pairs.len() + len > max_edges {
            break;
        }
        let mut vs: Vec<VertexId> = (0..n).collect();
        vs.shuffle(rng);
        pairs.extend((0..len).map(|i| (vs[i], vs[(i + 1) % len])));
    }
    build(rng, n, pairs, false)
}

/// Random spanning tree (each vertex joins an earlier one) plus extra
/// edges with probability `p`.
pub fn random_connected_undirected<R: Rng>(rng: &mut R, n: usize, p: f64) -> UndirectedGraph {
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push((u, v));
    }
    for a in 0..n {
        for b in a + 1..n {
            if !edges.contains(&(a, b)) && rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    edges.sort_unstable();
    UndirectedGraph::unweighted(n, &edges).expect("generated edges are valid")
}

/// A unit-weight digraph together with a coarse biclique partition: the
/// vertices are split into `r` tail groups and each group gets a random
/// nonempty head set avoiding its own members. Needs `2 ≤ r ≤ n`.
pub fn random_grouped_digraph<R: Rng>(rng: &mut R, n: usize, r: usize) -> BicliquePartition {
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(rng);
    let mut cuts: Vec<usize> = rand::seq::index::sample(rng, n - 1, r - 1).into_iter().map(|c| c + 1).collect();
    cuts.sort_unstable();
    let mut groups = Vec::with_capacity(r);
    let mut start = 0;
    for end in cuts.into_iter().chain([n]) {
        let mut g = order[start..end].to_vec();
        g.sort_unstable();
        groups.push(g);
        start = end;
    }
    let mut bicliques = Vec::new();
    let mut pairs = Vec::new();
    for tails in groups {
        let outside: Vec<VertexId> = (0..n).filter(|v| !tails.contains(v)).collect();
        let k = rng.gen_range(1..=outside.len());
        let mut heads: Vec<VertexId> = outside.choose_multiple(rng, k).copied().collect();
        heads.sort_unstable();
        for &t in &tails {
            pairs.extend(heads.iter().map(|&h| (t, h)));
        }
        bicliques.push(Biclique::new(tails, heads));
    }
    let g = build(rng, n, pairs, false);
    validate_partition(&g, bicliques).expect("grouped bicliques partition their union")
}

/// Every simple digraph on `n` vertices with at most `max_edges` edges,
/// unit-weighted, in increasing order of the edge bitmask.
pub fn exhaustive_digraphs(n: usize, max_edges: usize) -> impl Iterator<Item = WeightedDigraph> {
    let slots: Vec<(VertexId, VertexId)> =
        (0..n).flat_map(|t| (0..n).filter(move |&h| h != t).map(move |h| (t, h))).collect();
    assert!(slots.len() < 32, "exhaustive enumeration is limited to n ≤ 5");
    (0u32..1 << slots.len()).filter(move |mask| mask.count_ones() as usize <= max_edges).map(move |mask| {
        let pairs: Vec<_> = slots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        WeightedDigraph::unweighted(n, &pairs).expect("slots are valid edges")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<u32> = (0..4).map(|_| instance_rng(7, 3).gen()).collect();
        let b: Vec<u32> = (0..4).map(|_| instance_rng(7, 3).gen()).collect();
        assert_eq!(a, b);
        assert_ne!(instance_rng(7, 3).gen::<u64>(), instance_rng(7, 4).gen::<u64>());
    }

    #[test]
    fn generators_meet_their_guarantees() {
        let mut rng = instance_rng(1, 0);
        for n in 2..8 {
            for _ in 0..20 {
                let g = random_digraph_min_out(&mut rng, n, 0.2, true);
                assert!((0..n).all(|v| g.out_degree(v) > 0));
                assert!(random_strongly_connected(&mut rng, n, 0.2, true).is_strongly_connected());
                let g = random_min_in_out(&mut rng, n, 0.1, false);
                assert!((0..n).all(|v| g.out_degree(v) > 0 && g.in_degree(v) > 0));
                let g = random_eulerian(&mut rng, n, 12.max(n));
                assert!(g.is_eulerian() && g.edge_count() <= 12.max(n));
                assert!(random_connected_undirected(&mut rng, n, 0.3).is_connected());
                let r = rng.gen_range(2..=n);
                let p = random_grouped_digraph(&mut rng, n, r);
                assert!(p.host().is_unit_weighted());
            }
        }
    }

    #[test]
    fn exhaustive_counts() {
        assert_eq!(exhaustive_digraphs(3, 6).count(), 64);
        assert_eq!(exhaustive_digraphs(4, 8).count(), 3797);
        assert_eq!(exhaustive_digraphs(1, 8).count(), 1);
    }
}
