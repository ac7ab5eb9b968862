//! Named randomized identity suites.
//!
//! Each suite draws `count` instances from per-instance streams of a seeded
//! generator, evaluates both sides of its identities by independent routes
//! and records them exactly. A report renders to deterministic text; failing
//! instances carry their graph (and partition) in file format for replay.

use std::fmt::{self, Display, Write as _};

use num::{BigInt, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::arborescence::{
    arborescence_weight_sum, count_eulerian_circuits, enumerate_eulerian_circuits, tree_enumerator, tree_enumerators,
};
use crate::biclique::{
    blow_up_partition, eulerian_count_via_partition, line_sum_identity_check, line_tree_knuth, line_tree_levine,
    natural_line_partition, partition_tree_enum_from_host, reduced_tree_enum, schur_partition_identity, star_partition,
    tree_enum_via_partition, undirected_tree_count, BicliquePartition, Weighting,
};
use crate::error::Error;
use crate::graph::{VertexId, WeightedDigraph};
use crate::io::{write_graph, write_partition};
use crate::linalg::Polynomial;
use crate::markov::{
    iterated_line_kemeny, kemeny_constant, kemeny_from_fundamental_matrix, kemeny_from_passage_times,
    kemeny_via_partition, line_stationary, line_stationary_direct, stationary_distribution, stationary_via_partition,
    theta_transition_matrix, transition_matrix, DEFAULT_LINE_VERTEX_CAP,
};
use crate::random::{
    instance_rng, random_connected_undirected, random_digraph_min_out, random_eulerian, random_min_in_out,
    random_strongly_connected, random_vertex_weights,
};
use crate::rational::{from_usize, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    /// Laplacian minors against exhaustive arborescence sums.
    MatrixTree,
    /// Eulerian circuit counts by formula and by enumeration.
    Best,
    /// Tree enumerators through the vertex-weighted biclique digraph.
    Reduction,
    /// Spanning trees and circuits of Eulerian digraphs from the unit biclique digraph.
    EulerianReduction,
    /// Line-digraph tree counts from the base digraph.
    Line,
    /// Stationary vector, Kemeny's constant and spectrum through the unit biclique digraph.
    WalkReduction,
    /// Closed forms for k-blow-ups.
    BlowUp,
    /// Random walks on line digraphs and their iterates.
    LineWalk,
    /// The Schur-complement spanning tree identity.
    Schur,
    /// Undirected spanning tree counts through the biclique route.
    Undirected,
    /// Kemeny's constant by three formulas.
    Kemeny,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::MatrixTree,
        Suite::Best,
        Suite::Reduction,
        Suite::EulerianReduction,
        Suite::Line,
        Suite::WalkReduction,
        Suite::BlowUp,
        Suite::LineWalk,
        Suite::Schur,
        Suite::Undirected,
        Suite::Kemeny,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::MatrixTree => "matrix-tree",
            Suite::Best => "best",
            Suite::Reduction => "reduction",
            Suite::EulerianReduction => "eulerian-reduction",
            Suite::Line => "line",
            Suite::WalkReduction => "walk-reduction",
            Suite::BlowUp => "blowup",
            Suite::LineWalk => "line-walk",
            Suite::Schur => "schur",
            Suite::Undirected => "undirected",
            Suite::Kemeny => "kemeny",
        }
    }

    /// Accepts [`Suite::name`] and the short aliases `thm31`, `thm33`,
    /// `thm41` and `cor42`.
    pub fn from_name(name: &str) -> Option<Suite> {
        let alias = match name {
            "thm31" => Some(Suite::Reduction),
            "thm33" => Some(Suite::EulerianReduction),
            "thm41" => Some(Suite::WalkReduction),
            "cor42" => Some(Suite::LineWalk),
            _ => None,
        };
        alias.or_else(|| Suite::ALL.into_iter().find(|s| s.name() == name))
    }

    fn instance(self, rng: &mut ChaCha8Rng, index: u64) -> Result<Instance> {
        match self {
            Suite::MatrixTree => matrix_tree(rng),
            Suite::Best => best(rng),
            Suite::Reduction => reduction(rng),
            Suite::EulerianReduction => eulerian_reduction(rng),
            Suite::Line => line(rng, index % 5 == 4),
            Suite::WalkReduction => walk_reduction(rng),
            Suite::BlowUp => blow_up(rng),
            Suite::LineWalk => line_walk(rng),
            Suite::Schur => schur(rng),
            Suite::Undirected => undirected(rng),
            Suite::Kemeny => kemeny(rng),
        }
    }
}

impl Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One compared pair, rendered exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl Check {
    pub fn new<T: PartialEq + Display>(label: impl Into<String>, lhs: &T, rhs: &T) -> Self {
        Check { label: label.into(), lhs: lhs.to_string(), rhs: rhs.to_string(), pass: lhs == rhs }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceReport {
    pub index: u64,
    pub descriptor: String,
    pub checks: Vec<Check>,
    /// Set when the instance could not be evaluated.
    pub error: Option<String>,
    /// Graph file text of the instance.
    pub graph: String,
    /// Partition file text, when the instance uses an explicit partition.
    pub partition: Option<String>,
}

impl InstanceReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub suite: Suite,
    pub seed: u64,
    pub instances: Vec<InstanceReport>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.instances.iter().all(InstanceReport::passed)
    }

    pub fn failures(&self) -> usize {
        self.instances.iter().filter(|i| !i.passed()).count()
    }

    pub fn check_count(&self) -> usize {
        self.instances.iter().map(|i| i.checks.len()).sum()
    }
}

impl Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} seed {} count {}", self.suite, self.seed, self.instances.len())?;
        for inst in &self.instances {
            let status = if inst.passed() { "pass" } else { "FAIL" };
            writeln!(f, "{status} {} {}", inst.index, inst.descriptor)?;
            for c in &inst.checks {
                let rel = if c.pass { "=" } else { "!=" };
                writeln!(f, "  {}: {} {rel} {}", c.label, c.lhs, c.rhs)?;
            }
            if let Some(e) = &inst.error {
                writeln!(f, "  error: {e}")?;
            }
            if !inst.passed() {
                writeln!(f, "  graph:")?;
                for line in inst.graph.lines() {
                    writeln!(f, "    {line}")?;
                }
                if let Some(p) = &inst.partition {
                    writeln!(f, "  partition:")?;
                    for line in p.lines() {
                        writeln!(f, "    {line}")?;
                    }
                }
            }
        }
        writeln!(
            f,
            "summary suite {} seed {} passed {} failed {}",
            self.suite,
            self.seed,
            self.instances.len() - self.failures(),
            self.failures()
        )
    }
}

pub fn run_suite(suite: Suite, seed: u64, count: u64) -> VerificationReport {
    let instances = (0..count)
        .map(|index| {
            let mut rng = instance_rng(seed, index);
            match suite.instance(&mut rng, index) {
                Ok(inst) => InstanceReport {
                    index,
                    descriptor: inst.descriptor,
                    checks: inst.checks,
                    error: None,
                    graph: inst.graph,
                    partition: inst.partition,
                },
                Err(Failed { error, graph, partition }) => InstanceReport {
                    index,
                    descriptor: "unevaluated".into(),
                    checks: Vec::new(),
                    error: Some(format!("{}: {error}", error.kind())),
                    graph,
                    partition,
                },
            }
        })
        .collect();
    VerificationReport { suite, seed, instances }
}

struct Instance {
    descriptor: String,
    checks: Vec<Check>,
    graph: String,
    partition: Option<String>,
}

impl Instance {
    fn new(g: &WeightedDigraph, partition: Option<&BicliquePartition>) -> Self {
        Instance {
            descriptor: format!("n={} m={}", g.vertex_count(), g.edge_count()),
            checks: Vec::new(),
            graph: write_graph(g),
            partition: partition.map(write_partition),
        }
    }

    fn tag(mut self, extra: impl Display) -> Self {
        write!(self.descriptor, " {extra}").expect("writing to a String");
        self
    }

    fn check<T: PartialEq + Display>(&mut self, label: impl Into<String>, lhs: &T, rhs: &T) {
        self.checks.push(Check::new(label, lhs, rhs));
    }

    /// Wraps a fallible evaluation so errors keep the instance for replay.
    fn eval(mut self, body: impl FnOnce(&mut Instance) -> LibResult<()>) -> Result<Instance, Failed> {
        match body(&mut self) {
            Ok(()) => Ok(self),
            Err(error) => Err(Failed { error, graph: self.graph, partition: self.partition }),
        }
    }
}

struct Failed {
    error: Error,
    graph: String,
    partition: Option<String>,
}

type Result<T, E = Failed> = std::result::Result<T, E>;
type LibResult<T> = crate::error::Result<T>;

fn density(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo..=hi)
}

fn matrix_tree(rng: &mut ChaCha8Rng) -> Result<Instance> {
    let n = rng.gen_range(1..=7);
    let p = density(rng, 0.15, 0.7);
    let g = crate::random::random_digraph(rng, n, p, true);
    Instance::new(&g, None).eval(|inst| {
        let adjugate = tree_enumerators(&g);
        for root in 0..n {
            let minor = tree_enumerator(&g, root)?;
            inst.check(format!("t_{root} minor vs arborescence sum"), &minor, &arborescence_weight_sum(&g, root)?);
            inst.check(format!("t_{root} minor vs adjugate"), &minor, adjugate.get(root));
        }
        Ok(())
    })
}

fn best(rng: &mut ChaCha8Rng) -> Result<Instance> {
    let n = rng.gen_range(2..=6);
    let g = random_eulerian(rng, n, 12);
    Instance::new(&g, None).eval(|inst| {
        let formula = count_eulerian_circuits(&g)?;
        inst.check("circuits by formula vs enumeration", &formula, &BigInt::from(enumerate_eulerian_circuits(&g)?));
        Ok(())
    })
}

fn reduction(rng: &mut ChaCha8Rng) -> Result<Instance> {
    let n = rng.gen_range(2..=8);
    let p = density(rng, 0.1, 0.5);
    let base = random_digraph_min_out(rng, n, p, false);
    let w = random_vertex_weights(rng, n, 20);
    let g = base.with_induced_weights(&w).expect("weights match vertex count");
    let partition = star_partition(&g);
    let weights: Vec<String> = w.iter().map(ToString::to_string).collect();
    Instance::new(&g, Some(&partition)).tag(format!("w=[{}]", weights.join(","))).eval(|inst| {
        let direct = tree_enumerators(&g);
        for root in (0..n).filter(|&u| g.in_degree(u) > 0) {
            let via = tree_enum_via_partition(&partition, Weighting::Induced(&w), root)?;
            inst.check(format!("t_{root} via biclique digraph vs minor"), &via, direct.get(root));
        }
        for i in 0..partition.len() {
            let from_host = partition_tree_enum_from_host(&partition, Weighting::Induced(&w), i)?;
            inst.check(
                format!("t_Q{i} from host vs minor"),
                &from_host,
                &reduced_tree_enum(&partition, Weighting::Induced(&w), i)?,
            );
        }
        let unit = star_partition(&base);
        let direct = tree_enumerators(&base);
        for root in (0..n).filter(|&u| base.in_degree(u) > 0) {
            let via = tree_enum_via_partition(&unit, Weighting::Unit, root)?;
            inst.check(format!("unit t_{root} via biclique digraph vs minor"), &via, direct.get(root));
        }
        Ok(())
    })
}

fn eulerian_reduction(rng: &mut ChaCha8Rng) -> Result<Instance> {
    let n = rng.gen_range(2..=7);
    let g = random_eulerian(rng, n, 16);
    let partition = star_partition(&g);
    Instance::new(&g, Some(&partition)).eval(|inst| {
        let kappa = Rational::from_integer(tree_enumerator(&g, 0)?.to_integer());
        let circuits = count_eulerian_circuits(&g)?;
        for i in 0..partition.len() {
            let (k, c) = eulerian_count_via_partition(&partition, i)?;
            inst.check(format!("trees via Q{i} vs minor"), &Rational::from_integer(k), &kappa);
            inst.check(format!("circuits via Q{i} vs formula"), &c, &circuits);
        }
        for root in 1..n {
            inst.check(format!("t_{root} vs t_0"), &tree_enumerator(&g, root)?, &kappa);
        }
        Ok(())
    })
}

/// Appends a sink with at least two in-edges to a graph where every vertex
/// has in- and out-edges.
fn with_sink(rng: &mut ChaCha8Rng, n: usize) -> WeightedDigraph {
    let core = random_min_in_out(rng, n - 1, 0.2, false);
    let mut sources: Vec<VertexId> = (0..n - 1).collect();
    sources.shuffle(rng);
    let k = rng.gen_range(2..=(n - 1).min(3));
    let mut pairs: Vec<(VertexId, VertexId)> = core.edges().iter().map(|e| (e.tail, e.head)).collect();
    pairs.extend(sources[..k].iter().map(|&s| (s, n - 1)));
    WeightedDigraph::unweighted(n, &pairs).expect("valid edges")
}

fn line(rng: &mut ChaCha8Rng, sink: bool) -> Result<Instance> {
    let n = rng.gen_range(3..=5);
    let g = if sink {
        with_sink(rng, n)
    } else {
        let p = density(rng, 0.1, 0.35);
        random_min_in_out(rng, n, p, false)
    };
    let w = random_vertex_weights(rng, n, 20);
    let inst = Instance::new(&g, None);
    let inst = if sink { inst.tag("with-sink") } else { inst };
    inst.eval(|inst| {
        let line = g.line_digraph(None)?;
        let direct = tree_enumerators(&line.line);
        let weighted = g.with_induced_weights(&w)?;
        let weighted_line = weighted.line_digraph(None)?;
        let weighted_direct = tree_enumerators(&weighted_line.line);
        if !sink {
            let natural = natural_line_partition(&g)?;
            for e in 0..g.edge_count() {
                let v = line.vertex_of_edge[e];
                inst.check(format!("edge {e} count from base vs minor"), &line_tree_knuth(&g, e)?, direct.get(v));
                let via = tree_enum_via_partition(&natural.partition, Weighting::Unit, natural.line.vertex_of_edge[e])?;
                inst.check(format!("edge {e} count via line partition vs minor"), &via, direct.get(v));
            }
        }
        for e in (0..g.edge_count()).filter(|&e| g.in_degree(g.edge(e).head) >= 2) {
            let v = weighted_line.vertex_of_edge[e];
            let formula = line_tree_levine(&g, Some(&w), e)?;
            inst.check(format!("edge {e} weighted enumerator from base vs minor"), &formula, weighted_direct.get(v));
        }
        let (lhs, rhs) = line_sum_identity_check(&g, None)?;
        inst.check("line tree sum vs base", &lhs, &rhs);
        let (lhs, rhs) = line_sum_identity_check(&g, Some(&w))?;
        inst.check("weighted line tree sum vs base", &lhs, &rhs);
        if sink {
            inst.check("line tree sum vanishes", &lhs, &Rational::zero());
        }
        Ok(())
    })
}

fn walk_reduction(rng: &mut ChaCha8Rng) -> Result<Instance> {
    let n = rng.gen_range(2..=8);
    let p = density(rng, 0.05, 0.5);
    let g = random_strongly_connected(rng, n, p, false);
    let partition = star_partition(&g);
    Instance::new(&g, Some(&partition)).eval(|inst| check_walk_reduction(inst, &g, &partition))
}

fn check_walk_reduction(inst: &mut Instance, g: &WeightedDigraph, partition: &BicliquePartition) -> LibResult<()> {
    let pi = stationary_distribution(g)?;
    let via = stationary_via_partition(partition)?;
    for u in 0..g.vertex_count() {
        inst.check(format!("pi_{u} via biclique walk vs direct"), via.get(u), pi.get(u));
    }
    inst.check("Kemeny via biclique walk vs direct", &kemeny_via_partition(partition)?, &kemeny_constant(g)?);
    let host = transition_matrix(g)?.char_poly()?;
    let reduced = theta_transition_matrix(partition)?.char_poly()?;
    let shift = g.vertex_count() - partition.len();
    inst.check("char poly of walk vs shifted biclique walk", &host, &reduced.mul(&Polynomial::monomial(shift)));
    Ok(())
}

fn blow_up(rng: &mut ChaCha8Rng) -> Result<Instance> {
    let n = rng.gen_range(2..=4);
    let k = if n == 4 { 2 } else { rng.gen_range(2..=3) };
    let p = density(rng, 0.1, 0.5);
    let g = random_strongly_connected(rng, n, p, false);
    let b = g.blow_up(k).expect("unit weights and k ≥ 1");
    let partition = blow_up_partition(&b, &star_partition(&g)).expect("blow-up of a partition");
    Instance::new(&g, Some(&partition)).tag(format!("k={k}")).eval(|inst| {
        let kk = from_usize(k);
        let pi = stationary_distribution(&g)?;
        let big_pi = stationary_distribution(&b.graph)?;
        for u in 0..b.graph.vertex_count() {
            let class = b.class_of[u];
            let closed = crate::biclique::blow_up_tree_count(&g, k, class)?;
            inst.check(format!("blown-up t_{u} closed form vs minor"), &closed, &tree_enumerator(&b.graph, u)?);
            inst.check(format!("blown-up pi_{u} closed form vs direct"), &(pi.get(class) / &kk), big_pi.get(u));
        }
        let shift = from_usize(n * (k - 1));
        inst.check(
            "blown-up Kemeny closed form vs direct",
            &(kemeny_constant(&g)? + shift),
            &kemeny_constant(&b.graph)?,
        );
        check_walk_reduction(inst, &b.graph, &partition)
    })
}

fn line_walk(rng: &mut ChaCha8Rng) -> Result<Instance> {
    let n = rng.gen_range(2..=5);
    let p = density(rng, 0.05, 0.4);
    let g = random_strongly_connected(rng, n, p, false);
    Instance::new(&g, None).eval(|inst| {
        let predicted = line_stationary(&g)?;
        let direct = line_stationary_direct(&g)?;
        for (e, (lhs, rhs)) in predicted.pi.iter().zip(&direct).enumerate() {
            inst.check(format!("line pi_{e} from base vs direct"), lhs, rhs);
        }
        for s in 1..=2 {
            let it = iterated_line_kemeny(&g, s, DEFAULT_LINE_VERTEX_CAP)?;
            inst.check(format!("Kemeny of line iterate {s} closed form vs direct"), &it.closed_form, &it.explicit);
        }
        Ok(())
    })
}

fn schur(rng: &mut ChaCha8Rng) -> Result<Instance> {
    loop {
        let n = rng.gen_range(3..=7);
        let p = density(rng, 0.2, 0.6);
        let g = random_digraph_min_out(rng, n, p, true);
        let mut vs: Vec<VertexId> = (0..n).collect();
        vs.shuffle(rng);
        let size = rng.gen_range(1..n);
        let mut v1 = vs[..size].to_vec();
        let u = v1[rng.gen_range(0..size)];
        v1.sort_unstable();
        match schur_partition_identity(&g, &v1, u) {
            Err(Error::SingularBlock) => continue,
            outcome => {
                let listed: Vec<String> = v1.iter().map(ToString::to_string).collect();
                return Instance::new(&g, None).tag(format!("V1=[{}] u={u}", listed.join(","))).eval(|inst| {
                    let id = outcome?;
                    inst.check("Schur identity", &id.lhs, &id.rhs);
                    Ok(())
                });
            }
        }
    }
}

fn undirected(rng: &mut ChaCha8Rng) -> Result<Instance> {
    let n = rng.gen_range(2..=8);
    let p = density(rng, 0.05, 0.5);
    let h = random_connected_undirected(rng, n, p);
    let g = h.bidirect();
    Instance::new(&g, None).tag(format!("undirected-m={}", h.edges().len())).eval(|inst| {
        let via = Rational::from_integer(undirected_tree_count(&h, None)?);
        inst.check("spanning trees via biclique route vs minor", &via, &tree_enumerator(&g, 0)?);
        Ok(())
    })
}

fn kemeny(rng: &mut ChaCha8Rng) -> Result<Instance> {
    let n = rng.gen_range(2..=7);
    let p = density(rng, 0.05, 0.5);
    let g = random_strongly_connected(rng, n, p, true);
    Instance::new(&g, None).eval(|inst| {
        let k = kemeny_constant(&g)?;
        inst.check("char poly vs fundamental matrix", &k, &kemeny_from_fundamental_matrix(&g)?);
        for i in 0..n {
            inst.check(format!("char poly vs passage times from {i}"), &k, &kemeny_from_passage_times(&g, i)?);
        }
        Ok(())
    })
}
