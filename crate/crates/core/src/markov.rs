//! Random walks on weighted digraphs: stationary distribution, mean first
//! passage times and Kemeny's constant, plus their biclique and
//! line-digraph reductions.
//!
//! Kemeny's constant is `Σ_{i≥2} 1 / (1 − λ_i)` over the non-unit eigenvalues
//! of `P`. Writing `q(x) = det(xI − P) = (x − 1) r(x)`, that sum is
//! `r'(1) / r(1) = q''(1) / (2 q'(1))`, which needs no eigenvalues.

use num::{BigInt, One, Zero};

use crate::biclique::{theta_digraph, BicliquePartition};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, VertexId, WeightedDigraph};
use crate::linalg::Matrix;
use crate::rational::{from_usize, Rational};

/// Row-stochastic `P` with `P_ij = (Σ weights of edges i -> j) / d_i`.
pub fn transition_matrix(g: &WeightedDigraph) -> Result<Matrix> {
    let mut p = g.adjacency();
    for i in 0..g.vertex_count() {
        let d = g.weighted_degree(i);
        if d.is_zero() {
            return Err(Error::ZeroDegree(i));
        }
        for j in 0..g.vertex_count() {
            if !p[(i, j)].is_zero() {
                p[(i, j)] /= &d;
            }
        }
    }
    Ok(p)
}

/// Positive probability vector `π` with `πᵀP = πᵀ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StationaryDistribution(Vec<Rational>);

impl StationaryDistribution {
    pub fn get(&self, v: VertexId) -> &Rational {
        &self.0[v]
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.0
    }

    /// `πᵀP = πᵀ` and `Σ π = 1`, exactly.
    pub fn is_stationary_for(&self, p: &Matrix) -> bool {
        let n = self.0.len();
        let sums_to_one = self.0.iter().fold(Rational::zero(), |acc, x| acc + x).is_one();
        sums_to_one
            && (0..n).all(|j| {
                let col = (0..n).fold(Rational::zero(), |acc, i| acc + &self.0[i] * &p[(i, j)]);
                col == self.0[j]
            })
    }
}

fn require_strongly_connected(g: &WeightedDigraph) -> Result<Matrix> {
    if !g.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    transition_matrix(g)
}

fn laplacian_of_walk(p: &Matrix) -> Matrix {
    Matrix::identity(p.rows()).sub(p).expect("square")
}

/// `π_i = det (I − P)(i, i) / Σ_j det (I − P)(j, j)`.
pub fn stationary_distribution(g: &WeightedDigraph) -> Result<StationaryDistribution> {
    let p = require_strongly_connected(g)?;
    let lap = laplacian_of_walk(&p);
    let minors = (0..g.vertex_count()).map(|i| lap.minor_det(&[i], &[i])).collect::<Result<Vec<_>>>()?;
    let total = minors.iter().fold(Rational::zero(), |acc, m| acc + m);
    let pi = StationaryDistribution(minors.into_iter().map(|m| m / &total).collect());
    debug_assert!(pi.is_stationary_for(&p));
    Ok(pi)
}

/// `m_ij`: expected number of steps from `i` to first reach `j`, with
/// `m_jj = 0`. Solves `(I − P)` restricted to `V ∖ {j}` against the ones
/// vector, once per target.
pub fn mean_first_passage(g: &WeightedDigraph) -> Result<Matrix> {
    let p = require_strongly_connected(g)?;
    let n = g.vertex_count();
    let lap = laplacian_of_walk(&p);
    let mut m = Matrix::zeros(n, n);
    let ones = Matrix::from_fn(n.saturating_sub(1), 1, |_, _| Rational::one());
    for j in 0..n {
        let others: Vec<VertexId> = (0..n).filter(|&i| i != j).collect();
        let times = lap.select(&others, &others)?.solve(&ones)?;
        for (row, &i) in others.iter().enumerate() {
            m[(i, j)] = times[(row, 0)].clone();
        }
    }
    Ok(m)
}

/// Kemeny's constant from the characteristic polynomial of `P`.
pub fn kemeny_constant(g: &WeightedDigraph) -> Result<Rational> {
    let p = require_strongly_connected(g)?;
    kemeny_of_transition(&p)
}

fn kemeny_of_transition(p: &Matrix) -> Result<Rational> {
    let q = p.char_poly()?;
    let d1 = q.derivative();
    let d2 = d1.derivative();
    let one = Rational::one();
    let denom = d1.eval(&one) * from_usize(2);
    if denom.is_zero() {
        // eigenvalue 1 is not simple, so the chain is not irreducible
        return Err(Error::NotStronglyConnected);
    }
    Ok(d2.eval(&one) / denom)
}

/// `Σ_{j≠start} m_{start,j} π_j`, the defining form.
pub fn kemeny_from_passage_times(g: &WeightedDigraph, start: VertexId) -> Result<Rational> {
    g.check_vertex(start)?;
    let pi = stationary_distribution(g)?;
    let m = mean_first_passage(g)?;
    Ok((0..g.vertex_count()).filter(|&j| j != start).fold(Rational::zero(), |acc, j| acc + &m[(start, j)] * pi.get(j)))
}

/// `trace((I − P + 𝟙πᵀ)⁻¹) − 1`.
pub fn kemeny_from_fundamental_matrix(g: &WeightedDigraph) -> Result<Rational> {
    let p = require_strongly_connected(g)?;
    let pi = stationary_distribution(g)?;
    let n = g.vertex_count();
    let z = Matrix::from_fn(n, n, |i, j| {
        let delta = if i == j { Rational::one() } else { Rational::zero() };
        delta - &p[(i, j)] + pi.get(j)
    });
    Ok(z.inverse()?.trace()? - Rational::one())
}

/// Stationary vector, passage times and Kemeny's constant together.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkovAnalytics {
    pub pi: StationaryDistribution,
    pub mfpt: Matrix,
    pub kemeny: Rational,
}

pub fn analyze(g: &WeightedDigraph) -> Result<MarkovAnalytics> {
    Ok(MarkovAnalytics { pi: stationary_distribution(g)?, mfpt: mean_first_passage(g)?, kemeny: kemeny_constant(g)? })
}

/// `P_Θ`: the walk on `Θ(ε)`. Row `i` of the `Θ` weights sums to `|Q_i⁽²⁾|`.
pub fn theta_transition_matrix(partition: &BicliquePartition) -> Result<Matrix> {
    transition_matrix(&theta_digraph(partition).digraph)
}

fn theta_walk(partition: &BicliquePartition) -> Result<WeightedDigraph> {
    let host = partition.host();
    host.require_unit_weights()?;
    if !host.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    let theta = theta_digraph(partition).digraph;
    if !theta.is_strongly_connected() {
        return Err(Error::ReducedNotStronglyConnected);
    }
    Ok(theta)
}

/// `π_u(G) = Σ_{Q_i ∋ u as head} π_{Q_i}(Θ(ε)) / |Q_i⁽²⁾|` for a unit-weight,
/// strongly connected host.
pub fn stationary_via_partition(partition: &BicliquePartition) -> Result<StationaryDistribution> {
    let theta = theta_walk(partition)?;
    let reduced = stationary_distribution(&theta)?;
    let n = partition.host().vertex_count();
    let pi = (0..n)
        .map(|u| {
            (0..partition.len()).fold(Rational::zero(), |acc, i| {
                let m = partition.head_multiplicity(i, u);
                if m == 0 {
                    acc
                } else {
                    acc + from_usize(m) * reduced.get(i) / from_usize(partition.head_size(i))
                }
            })
        })
        .collect();
    Ok(StationaryDistribution(pi))
}

/// `𝒦(G) = 𝒦(Θ(ε)) + n − r`.
pub fn kemeny_via_partition(partition: &BicliquePartition) -> Result<Rational> {
    let theta = theta_walk(partition)?;
    let n = partition.host().vertex_count() as i64;
    let r = partition.len() as i64;
    Ok(kemeny_constant(&theta)? + Rational::from_integer(BigInt::from(n - r)))
}

/// Line-digraph quantities predicted from `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineStationary {
    /// `π_e(𝓛(G)) = π_i(G) / d_i⁺` for `e = i -> j`, indexed by edge.
    pub pi: Vec<Rational>,
    /// `𝒦(𝓛(G)) = 𝒦(G) + m − n`.
    pub kemeny: Rational,
}

pub fn line_stationary(g: &WeightedDigraph) -> Result<LineStationary> {
    g.require_unit_weights()?;
    let pi = stationary_distribution(g)?;
    let per_edge = g.edges().iter().map(|e| pi.get(e.tail) / from_usize(g.out_degree(e.tail))).collect();
    let shift = g.edge_count() as i64 - g.vertex_count() as i64;
    Ok(LineStationary { pi: per_edge, kemeny: kemeny_constant(g)? + Rational::from_integer(shift.into()) })
}

/// Stationary probability of each line vertex, in edge order of `G`.
pub fn line_stationary_direct(g: &WeightedDigraph) -> Result<Vec<Rational>> {
    let line = g.line_digraph(None)?;
    let pi = stationary_distribution(&line.line)?;
    Ok((0..g.edge_count()).map(|e: EdgeId| pi.get(line.vertex_of_edge[e]).clone()).collect())
}

/// Number of walks with `s` edges, which is `|V(𝓛^s(G))|`.
pub fn walk_count(g: &WeightedDigraph, s: usize) -> BigInt {
    let n = g.vertex_count();
    let mut ends = vec![BigInt::one(); n];
    for _ in 0..s {
        let mut next = vec![BigInt::zero(); n];
        for e in g.edges() {
            next[e.head] += &ends[e.tail];
        }
        ends = next;
    }
    ends.into_iter().sum()
}

pub const DEFAULT_LINE_VERTEX_CAP: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IteratedLineKemeny {
    /// `|V(𝓛^s(G))|`.
    pub vertices: BigInt,
    /// `𝒦(G) + |V(𝓛^s(G))| − n`.
    pub closed_form: Rational,
    /// `𝒦` computed on the explicitly built `𝓛^s(G)`.
    pub explicit: Rational,
}

/// Kemeny's constant of the `s`-th iterated line digraph, by the closed
/// form and by construction. Fails with [`Error::TooLarge`] when
/// `𝓛^s(G)` would have more than `cap` vertices.
pub fn iterated_line_kemeny(g: &WeightedDigraph, s: usize, cap: usize) -> Result<IteratedLineKemeny> {
    g.require_unit_weights()?;
    let base = kemeny_constant(g)?;
    let vertices = walk_count(g, s);
    if vertices > BigInt::from(cap) {
        return Err(Error::TooLarge { size: format!("{vertices} vertices"), cap: format!("{cap} vertices") });
    }
    let closed_form = base + Rational::from_integer(&vertices - BigInt::from(g.vertex_count()));
    let mut h = g.clone();
    for _ in 0..s {
        h = h.line_digraph(None)?.line;
    }
    Ok(IteratedLineKemeny { vertices, closed_form, explicit: kemeny_constant(&h)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biclique::{blow_up_partition, star_partition};
    use crate::fixtures::*;
    use crate::graph::UndirectedGraph;
    use crate::linalg::Polynomial;
    use crate::rational::{int, rat};

    #[test]
    fn transition_examples() {
        assert_eq!(transition_matrix(&c3()).unwrap(), Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]).unwrap());
        let k = transition_matrix(&k3_bidirected()).unwrap();
        assert_eq!(k, Matrix::from_fn(3, 3, |i, j| if i == j { int(0) } else { rat(1, 2) }));
        assert_eq!(transition_matrix(&m2()).unwrap(), Matrix::from_i64(&[&[0, 1], &[1, 0]]).unwrap());
        assert_eq!(transition_matrix(&c3_open()), Err(Error::ZeroDegree(2)));
    }

    #[test]
    fn stationary_examples() {
        let third = vec![rat(1, 3); 3];
        assert_eq!(stationary_distribution(&c3()).unwrap().as_slice(), third.as_slice());
        assert_eq!(stationary_distribution(&k3_bidirected()).unwrap().as_slice(), third.as_slice());
        let path = UndirectedGraph::unweighted(3, &[(0, 1), (1, 2)]).unwrap().bidirect();
        assert_eq!(stationary_distribution(&path).unwrap().as_slice(), &[rat(1, 4), rat(1, 2), rat(1, 4)]);
        assert_eq!(stationary_distribution(&c3_open()), Err(Error::NotStronglyConnected));
    }

    #[test]
    fn passage_examples() {
        let m = mean_first_passage(&c3()).unwrap();
        assert_eq!((m[(0, 1)].clone(), m[(0, 2)].clone(), m[(0, 0)].clone()), (int(1), int(2), int(0)));
        let m = mean_first_passage(&k3_bidirected()).unwrap();
        assert!((0..3).all(|i| (0..3).all(|j| m[(i, j)] == if i == j { int(0) } else { int(2) })));
        let m = mean_first_passage(&d2()).unwrap();
        assert_eq!((m[(0, 1)].clone(), m[(1, 0)].clone()), (int(1), int(1)));
    }

    #[test]
    fn kemeny_examples() {
        for (g, k) in [(c3(), int(1)), (k3_bidirected(), rat(4, 3)), (d2(), rat(1, 2))] {
            assert_eq!(kemeny_constant(&g).unwrap(), k);
            assert_eq!(kemeny_from_fundamental_matrix(&g).unwrap(), k);
            for i in 0..g.vertex_count() {
                assert_eq!(kemeny_from_passage_times(&g, i).unwrap(), k);
            }
        }
    }

    #[test]
    fn partition_examples() {
        let p = star_partition(&c3());
        assert_eq!(stationary_via_partition(&p).unwrap().as_slice(), &[rat(1, 3), rat(1, 3), rat(1, 3)]);
        assert_eq!(kemeny_via_partition(&p).unwrap(), int(1));
        let p = star_partition(&k3_bidirected());
        assert_eq!(stationary_via_partition(&p).unwrap().as_slice(), &[rat(1, 3), rat(1, 3), rat(1, 3)]);
        assert_eq!(kemeny_via_partition(&p).unwrap(), rat(4, 3));

        let b = c3().blow_up(2).unwrap();
        let p = blow_up_partition(&b, &star_partition(&c3())).unwrap();
        assert_eq!(stationary_via_partition(&p).unwrap().as_slice(), vec![rat(1, 6); 6].as_slice());
        assert_eq!(kemeny_via_partition(&p).unwrap(), int(4));
        assert_eq!(kemeny_constant(&b.graph).unwrap(), int(4));
    }

    #[test]
    fn theta_char_poly_factor() {
        let g = k3_bidirected();
        let b = g.blow_up(2).unwrap();
        let p = blow_up_partition(&b, &star_partition(&g)).unwrap();
        let big = transition_matrix(&b.graph).unwrap().char_poly().unwrap();
        let small = theta_transition_matrix(&p).unwrap().char_poly().unwrap();
        assert_eq!(big, small.mul(&Polynomial::monomial(3)));
    }

    #[test]
    fn line_examples() {
        let l = line_stationary(&c3()).unwrap();
        assert_eq!((l.pi, l.kemeny), (vec![rat(1, 3); 3], int(1)));
        let l = line_stationary(&k3_bidirected()).unwrap();
        assert_eq!(l.pi, vec![rat(1, 6); 6]);
        assert_eq!(l.kemeny, rat(13, 3));
        assert_eq!(line_stationary_direct(&k3_bidirected()).unwrap(), l.pi);
        assert_eq!(kemeny_constant(&k3_bidirected().line_digraph(None).unwrap().line).unwrap(), rat(13, 3));
        let l = line_stationary(&d2()).unwrap();
        assert_eq!((l.pi, l.kemeny), (vec![rat(1, 2); 2], rat(1, 2)));
    }

    #[test]
    fn iterated_examples() {
        let it = iterated_line_kemeny(&c3(), 5, DEFAULT_LINE_VERTEX_CAP).unwrap();
        assert_eq!((it.closed_form.clone(), it.explicit.clone()), (int(1), int(1)));
        let it = iterated_line_kemeny(&k3_bidirected(), 1, DEFAULT_LINE_VERTEX_CAP).unwrap();
        assert_eq!((it.closed_form.clone(), it.explicit.clone()), (rat(13, 3), rat(13, 3)));
        let it = iterated_line_kemeny(&k3_bidirected(), 2, DEFAULT_LINE_VERTEX_CAP).unwrap();
        assert_eq!(it.vertices, BigInt::from(12));
        assert_eq!((it.closed_form.clone(), it.explicit.clone()), (rat(31, 3), rat(31, 3)));
        assert_eq!(iterated_line_kemeny(&k3_bidirected(), 6, 100).unwrap_err().kind(), "TooLarge");
    }
}
