use arbor::arborescence::{count_eulerian_circuits, tree_enumerator, tree_enumerators};
use arbor::biclique::{
    blow_up_partition, eulerian_count_via_partition, line_sum_identity_check, line_tree_knuth, line_tree_levine,
    natural_line_partition, partition_tree_enum_from_host, reduced_tree_enum, schur_partition_identity, star_partition,
    theta_digraph, tree_enum_via_partition, validate_partition, Biclique, BicliquePartition, Weighting,
};
use arbor::io::{parse_partition, write_partition};
use arbor::linalg::{Matrix, Polynomial};
use arbor::markov::{
    kemeny_constant, kemeny_from_fundamental_matrix, kemeny_from_passage_times, kemeny_via_partition,
    stationary_distribution, stationary_via_partition, theta_transition_matrix, transition_matrix,
};
use arbor::random::{
    instance_rng, random_digraph, random_digraph_min_out, random_eulerian, random_grouped_digraph, random_min_in_out,
    random_strongly_connected, random_vertex_weights,
};
use arbor::rational::from_usize;
use arbor::{Error, Rational, VertexId};
use num::{One, Zero};
use proptest::prelude::*;
use rand::Rng;

/// `R_{u,i} = m1_i(u) |Q_i⁽²⁾| / d_u⁺` and `S_{i,v} = m2_i(v) / |Q_i⁽²⁾|`, so
/// that `P_G = R S` and `P_Θ = S R`.
fn incidence_factors(p: &BicliquePartition) -> (Matrix, Matrix) {
    let g = p.host();
    let (n, r) = (g.vertex_count(), p.len());
    let r_mat = Matrix::from_fn(n, r, |u, i| {
        from_usize(p.tail_multiplicity(i, u) * p.head_size(i)) / from_usize(g.out_degree(u))
    });
    let s_mat = Matrix::from_fn(r, n, |i, v| from_usize(p.head_multiplicity(i, v)) / from_usize(p.head_size(i)));
    (r_mat, s_mat)
}

fn grouped(seed: u64, n: usize) -> BicliquePartition {
    let mut rng = instance_rng(seed, 0);
    let r = rng.gen_range(2..=n);
    random_grouped_digraph(&mut rng, n, r)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weighted_reduction_on_star_partitions(seed in any::<u64>(), n in 2usize..=7) {
        let mut rng = instance_rng(seed, 0);
        let base = random_digraph_min_out(&mut rng, n, 0.3, false);
        let w = random_vertex_weights(&mut rng, n, 20);
        let g = base.with_induced_weights(&w).unwrap();
        let p = star_partition(&g);
        let direct = tree_enumerators(&g);
        for u in (0..n).filter(|&u| g.in_degree(u) > 0) {
            prop_assert_eq!(&tree_enum_via_partition(&p, Weighting::Induced(&w), u).unwrap(), direct.get(u));
        }
        for i in 0..p.len() {
            prop_assert_eq!(
                partition_tree_enum_from_host(&p, Weighting::Induced(&w), i).unwrap(),
                reduced_tree_enum(&p, Weighting::Induced(&w), i).unwrap()
            );
        }
    }

    #[test]
    fn reductions_on_coarse_partitions(seed in any::<u64>(), n in 2usize..=8) {
        let p = grouped(seed, n);
        let g = p.host().clone();
        let direct = tree_enumerators(&g);
        for u in (0..n).filter(|&u| g.in_degree(u) > 0) {
            prop_assert_eq!(&tree_enum_via_partition(&p, Weighting::Unit, u).unwrap(), direct.get(u));
        }
        for i in 0..p.len() {
            prop_assert_eq!(
                partition_tree_enum_from_host(&p, Weighting::Unit, i).unwrap(),
                reduced_tree_enum(&p, Weighting::Unit, i).unwrap()
            );
        }
        let w = random_vertex_weights(&mut instance_rng(seed, 1), n, 20);
        let weighted = validate_partition(&g.with_induced_weights(&w).unwrap(), p.bicliques().to_vec()).unwrap();
        let direct = tree_enumerators(weighted.host());
        for u in (0..n).filter(|&u| g.in_degree(u) > 0) {
            prop_assert_eq!(&tree_enum_via_partition(&weighted, Weighting::Induced(&w), u).unwrap(), direct.get(u));
        }
    }

    #[test]
    fn transition_matrices_factor_through_incidences(seed in any::<u64>(), n in 2usize..=8) {
        for p in [grouped(seed, n), star_partition(&random_digraph_min_out(&mut instance_rng(seed, 2), n, 0.3, false))] {
            let (r, s) = incidence_factors(&p);
            let pg = transition_matrix(p.host()).unwrap();
            let pt = theta_transition_matrix(&p).unwrap();
            prop_assert_eq!(&pg, &r.mul(&s).unwrap());
            prop_assert_eq!(&pt, &s.mul(&r).unwrap());
            let shift = Polynomial::monomial(n - p.len());
            prop_assert_eq!(pg.char_poly().unwrap(), pt.char_poly().unwrap().mul(&shift));
        }
    }

    #[test]
    fn walk_reduction_on_coarse_partitions(seed in any::<u64>(), n in 2usize..=8) {
        let p = grouped(seed, n);
        prop_assume!(p.host().is_strongly_connected());
        let pi = stationary_distribution(p.host()).unwrap();
        prop_assert_eq!(&stationary_via_partition(&p).unwrap(), &pi);
        prop_assert_eq!(kemeny_via_partition(&p).unwrap(), kemeny_constant(p.host()).unwrap());
    }

    #[test]
    fn eulerian_counts_are_index_independent_integers(seed in any::<u64>(), n in 2usize..=6, k in 1usize..=2) {
        let g = random_eulerian(&mut instance_rng(seed, 0), n, 12);
        let b = g.blow_up(k).unwrap();
        let p = blow_up_partition(&b, &star_partition(&g)).unwrap();
        let kappa = tree_enumerator(&b.graph, 0).unwrap();
        let circuits = count_eulerian_circuits(&b.graph).unwrap();
        for i in 0..p.len() {
            let (t, c) = eulerian_count_via_partition(&p, i).unwrap();
            prop_assert_eq!(Rational::from_integer(t), kappa.clone());
            prop_assert_eq!(&c, &circuits);
        }
    }

    /// Counts from the base formula, from the natural line partition and from
    /// minors of the line digraph all coincide.
    #[test]
    fn line_digraph_three_way_agreement(seed in any::<u64>(), n in 2usize..=5) {
        let mut rng = instance_rng(seed, 0);
        let g = random_min_in_out(&mut rng, n, 0.25, false);
        let natural = natural_line_partition(&g).unwrap();
        let direct = tree_enumerators(&natural.line.line);
        for e in 0..g.edge_count() {
            let v = natural.line.vertex_of_edge[e];
            let knuth = line_tree_knuth(&g, e).unwrap();
            prop_assert_eq!(&knuth, direct.get(v));
            prop_assert_eq!(&tree_enum_via_partition(&natural.partition, Weighting::Unit, v).unwrap(), direct.get(v));
            if g.in_degree(g.edge(e).head) >= 2 {
                prop_assert_eq!(&line_tree_levine(&g, None, e).unwrap(), &knuth);
            }
        }
        let w = random_vertex_weights(&mut rng, n, 20);
        let weighted = g.with_induced_weights(&w).unwrap();
        let line = weighted.line_digraph(None).unwrap();
        for e in (0..g.edge_count()).filter(|&e| g.in_degree(g.edge(e).head) >= 2) {
            prop_assert_eq!(
                line_tree_levine(&g, Some(&w), e).unwrap(),
                tree_enumerator(&line.line, line.vertex_of_edge[e]).unwrap()
            );
        }
    }

    #[test]
    fn line_sum_identity_with_general_weights(seed in any::<u64>(), n in 2usize..=5) {
        let mut rng = instance_rng(seed, 0);
        let mut g = random_digraph(&mut rng, n, 0.4, true);
        // every vertex needs an in-edge
        let mut edges: Vec<_> = g.edges().iter().map(|e| (e.tail, e.head, e.weight.clone())).collect();
        for v in (0..n).filter(|&v| g.in_degree(v) == 0) {
            edges.push(((v + 1) % n, v, Rational::one()));
        }
        g = arbor::WeightedDigraph::new(n, edges).unwrap();
        let (lhs, rhs) = line_sum_identity_check(&g, None).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn schur_identity_on_random_splits(seed in any::<u64>(), n in 3usize..=7, mask in 1u32..127) {
        let g = random_digraph_min_out(&mut instance_rng(seed, 0), n, 0.4, true);
        let v1: Vec<VertexId> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        prop_assume!(!v1.is_empty() && v1.len() < n);
        for &u in &v1 {
            match schur_partition_identity(&g, &v1, u) {
                Ok(id) => prop_assert_eq!(id.lhs, id.rhs),
                Err(Error::SingularBlock) => {}
                Err(e) => prop_assert!(false, "unexpected {e}"),
            }
        }
    }

    #[test]
    fn kemeny_routes_agree(seed in any::<u64>(), n in 2usize..=6) {
        let g = random_strongly_connected(&mut instance_rng(seed, 0), n, 0.3, true);
        let pi = stationary_distribution(&g).unwrap();
        prop_assert!(pi.is_stationary_for(&transition_matrix(&g).unwrap()));
        prop_assert!(pi.as_slice().iter().all(|x| *x > Rational::zero()));
        let k = kemeny_constant(&g).unwrap();
        prop_assert_eq!(&k, &kemeny_from_fundamental_matrix(&g).unwrap());
        for i in 0..n {
            prop_assert_eq!(&k, &kemeny_from_passage_times(&g, i).unwrap());
        }
    }

    #[test]
    fn partitions_survive_file_round_trip(seed in any::<u64>(), n in 2usize..=8) {
        let p = grouped(seed, n);
        prop_assert_eq!(parse_partition(p.host(), &write_partition(&p)).unwrap(), p);
    }

    /// Dropping a head or adding a foreign pair breaks a valid partition.
    #[test]
    fn mutated_partitions_are_rejected(seed in any::<u64>(), n in 3usize..=8) {
        let p = grouped(seed, n);
        let g = p.host();
        let mut dropped = p.bicliques().to_vec();
        let victim = dropped.iter().position(|q| q.heads.len() > 1);
        if let Some(i) = victim {
            dropped[i].heads.pop();
            prop_assert_eq!(validate_partition(g, dropped).unwrap_err().kind(), "CoverageGap");
        }
        let missing = (0..n).flat_map(|t| (0..n).map(move |h| (t, h))).find(|&(t, h)| t != h && g.multiplicity(t, h) == 0);
        if let Some((t, h)) = missing {
            let mut extended = p.bicliques().to_vec();
            extended.push(Biclique::new(vec![t], vec![h]));
            prop_assert_eq!(validate_partition(g, extended).unwrap_err().kind(), "NotABiclique");
        }
        let mut doubled = p.bicliques().to_vec();
        doubled.push(p.bicliques()[0].clone());
        prop_assert_eq!(validate_partition(g, doubled).unwrap_err().kind(), "CoverageOverlap");
    }
}

#[test]
fn theta_of_star_partition_mirrors_host() {
    let g = random_strongly_connected(&mut instance_rng(3, 0), 6, 0.3, false);
    let theta = theta_digraph(&star_partition(&g)).digraph;
    assert_eq!(theta.edge_count(), g.edge_count());
    assert!(theta.is_strongly_connected());
}
