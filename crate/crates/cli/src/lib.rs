//! Command-line front end for `arbor`.
//!
//! [`run`] parses arguments, reads input files and renders results; the
//! binary only forwards its output and exit code. Results are exact
//! rationals printed as `p/q` (`p` when `q = 1`). `--format json` emits the
//! same values as JSON documents whose shape is described in the README.

use std::fs;

use arbor::arborescence::{count_eulerian_circuits, tree_enumerator, tree_enumerators};
use arbor::biclique::{natural_line_partition, omega_digraph, star_partition, theta_digraph, BicliquePartition};
use arbor::io::{parse_graph, parse_partition, write_graph};
use arbor::markov::{
    kemeny_constant, kemeny_via_partition, mean_first_passage, stationary_distribution, stationary_via_partition,
};
use arbor::rational::{parse_rational, to_decimal};
use arbor::verify::{run_suite, Suite, VerificationReport};
use arbor::{Error, Rational, VertexId, WeightedDigraph};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "arbor", version, about = "Exact spanning-tree and random-walk computations on weighted digraphs")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tree enumerators `t_root(G)` from Laplacian minors.
    Trees {
        graph: String,
        #[arg(long, conflicts_with = "all_roots", required_unless_present = "all_roots")]
        root: Option<VertexId>,
        #[arg(long)]
        all_roots: bool,
    },
    /// Spanning-tree and Eulerian-circuit counts of an Eulerian digraph.
    Eulerian { graph: String },
    /// Stationary distribution of the random walk.
    Stationary {
        graph: String,
        #[command(flatten)]
        display: Decimals,
    },
    /// Kemeny's constant.
    Kemeny {
        graph: String,
        #[command(flatten)]
        display: Decimals,
    },
    /// Mean first passage times `m_ij`.
    Mfpt {
        graph: String,
        #[command(flatten)]
        display: Decimals,
    },
    /// The (iterated) line digraph, in graph file format.
    Line {
        graph: String,
        /// Number of line-digraph iterations.
        #[arg(long, default_value_t = 1)]
        iterations: usize,
    },
    /// The k-blow-up, in graph file format.
    Blowup {
        graph: String,
        #[arg(long)]
        k: usize,
    },
    /// A biclique partition and its biclique digraph.
    Reduce {
        graph: String,
        #[command(flatten)]
        partition: PartitionArg,
        /// Comma-separated vertex weights inducing the edge weights; selects
        /// the weighted biclique digraph.
        #[arg(long)]
        weights: Option<String>,
    },
    /// Stationary distribution and Kemeny's constant through a biclique partition.
    ReduceMarkov {
        graph: String,
        #[command(flatten)]
        partition: PartitionArg,
        #[command(flatten)]
        display: Decimals,
    },
    /// Run a randomized identity suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: u64,
    },
}

#[derive(Args, Debug)]
pub struct Decimals {
    /// Also print decimal approximations with this many digits.
    #[arg(long)]
    pub decimals: Option<usize>,
}

#[derive(Args, Debug)]
pub struct PartitionArg {
    /// `star`, `line-natural` or `file:<path>`.
    #[arg(long, default_value = "star")]
    pub partition: String,
}

/// Everything a process would emit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Failure before any result exists.
#[derive(Debug)]
enum Failure {
    Library(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli.command) {
        Ok(rendered) => {
            let stdout = match cli.format {
                Format::Text => rendered.text,
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&rendered.json).expect("JSON values serialize");
                    s.push('\n');
                    s
                }
            };
            let code = if rendered.verification_failed { EXIT_VERIFICATION_FAILED } else { EXIT_OK };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(failure) => {
            let stderr = match failure {
                Failure::Library(e) => format!("error: {}: {e}\n", e.kind()),
                Failure::Input(msg) => format!("error: {msg}\n"),
            };
            Outcome { code: EXIT_INPUT_ERROR, stdout: String::new(), stderr }
        }
    }
}

struct Rendered {
    text: String,
    json: Value,
    verification_failed: bool,
}

impl Rendered {
    fn ok(text: String, json: Value) -> Self {
        Rendered { text, json, verification_failed: false }
    }
}

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("Io: cannot read {path}: {e}")))
}

fn load_graph(path: &str) -> Result<WeightedDigraph, Failure> {
    Ok(parse_graph(&read(path)?)?)
}

/// `value` alone, or `value decimal` with `--decimals`.
fn cell(r: &Rational, display: &Decimals) -> String {
    match display.decimals {
        Some(d) => format!("{r} {}", to_decimal(r, d)),
        None => r.to_string(),
    }
}

fn json_value(r: &Rational, display: &Decimals) -> Value {
    match display.decimals {
        Some(d) => json!({ "exact": r.to_string(), "decimal": to_decimal(r, d) }),
        None => json!(r.to_string()),
    }
}

fn execute(command: &Command) -> Result<Rendered, Failure> {
    match command {
        Command::Trees { graph, root, all_roots } => {
            let g = load_graph(graph)?;
            let values: Vec<(VertexId, Rational)> = if *all_roots {
                tree_enumerators(&g).values().iter().cloned().enumerate().collect()
            } else {
                let r = root.expect("clap requires --root without --all-roots");
                vec![(r, tree_enumerator(&g, r)?)]
            };
            let text = values.iter().map(|(r, v)| format!("{r} {v}\n")).collect();
            let json = json!({
                "command": "trees",
                "values": values.iter().map(|(r, v)| json!({ "root": r, "value": v.to_string() })).collect::<Vec<_>>(),
            });
            Ok(Rendered::ok(text, json))
        }
        Command::Eulerian { graph } => {
            let g = load_graph(graph)?;
            let circuits = count_eulerian_circuits(&g)?;
            let trees = tree_enumerator(&g, 0)?;
            let text = format!("trees {trees}\ncircuits {circuits}\n");
            let json = json!({ "command": "eulerian", "trees": trees.to_string(), "circuits": circuits.to_string() });
            Ok(Rendered::ok(text, json))
        }
        Command::Stationary { graph, display } => {
            let g = load_graph(graph)?;
            let pi = stationary_distribution(&g)?;
            Ok(render_distribution("stationary", pi.as_slice(), display))
        }
        Command::Kemeny { graph, display } => {
            let k = kemeny_constant(&load_graph(graph)?)?;
            let json = json!({ "command": "kemeny", "value": json_value(&k, display) });
            Ok(Rendered::ok(format!("{}\n", cell(&k, display)), json))
        }
        Command::Mfpt { graph, display } => {
            let g = load_graph(graph)?;
            let m = mean_first_passage(&g)?;
            let n = g.vertex_count();
            let rows: Vec<Vec<String>> = (0..n).map(|i| (0..n).map(|j| cell(&m[(i, j)], display)).collect()).collect();
            let text = rows.iter().map(|r| format!("{}\n", r.join("\t"))).collect();
            let json_rows: Vec<Vec<Value>> =
                (0..n).map(|i| (0..n).map(|j| json_value(&m[(i, j)], display)).collect()).collect();
            Ok(Rendered::ok(text, json!({ "command": "mfpt", "matrix": json_rows })))
        }
        Command::Line { graph, iterations } => {
            let mut g = load_graph(graph)?;
            for _ in 0..*iterations {
                g = g.line_digraph(None)?.line;
            }
            let text = write_graph(&g);
            Ok(Rendered::ok(text.clone(), json!({ "command": "line", "iterations": iterations, "graph": text })))
        }
        Command::Blowup { graph, k } => {
            let b = load_graph(graph)?.blow_up(*k)?;
            let text = write_graph(&b.graph);
            let json = json!({ "command": "blowup", "k": k, "class_of": b.class_of, "graph": text });
            Ok(Rendered::ok(text, json))
        }
        Command::Reduce { graph, partition, weights } => {
            let g = load_graph(graph)?;
            let p = resolve_partition(&g, &partition.partition)?;
            let (kind, reduced) = match weights {
                Some(w) => ("omega", omega_digraph(&p, &parse_weights(w)?)?.digraph),
                None => ("theta", theta_digraph(&p).digraph),
            };
            let reduced_text = write_graph(&reduced);
            let text = format!("# partition\n{p}# {kind} biclique digraph\n{reduced_text}");
            let json = json!({
                "command": "reduce",
                "kind": kind,
                "partition": partition_json(&p),
                "reduced": reduced_text,
            });
            Ok(Rendered::ok(text, json))
        }
        Command::ReduceMarkov { graph, partition, display } => {
            let g = load_graph(graph)?;
            let p = resolve_partition(&g, &partition.partition)?;
            let pi = stationary_via_partition(&p)?;
            let k = kemeny_via_partition(&p)?;
            let mut rendered = render_distribution("reduce-markov", pi.as_slice(), display);
            rendered.text.push_str(&format!("kemeny {}\n", cell(&k, display)));
            rendered.json["kemeny"] = json_value(&k, display);
            rendered.json["bicliques"] = json!(p.len());
            Ok(rendered)
        }
        Command::Verify { suite, seed, count } => {
            let s = Suite::from_name(suite).ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                Failure::Input(format!("UnknownSuite: `{suite}`; expected one of {}", names.join(", ")))
            })?;
            let report = run_suite(s, *seed, *count);
            Ok(Rendered { text: report.to_string(), json: report_json(&report), verification_failed: !report.passed() })
        }
    }
}

fn render_distribution(command: &str, pi: &[Rational], display: &Decimals) -> Rendered {
    let text = pi.iter().enumerate().map(|(v, p)| format!("{v} {}\n", cell(p, display))).collect();
    let values: Vec<Value> =
        pi.iter().enumerate().map(|(v, p)| json!({ "vertex": v, "value": json_value(p, display) })).collect();
    Rendered::ok(text, json!({ "command": command, "values": values }))
}

fn parse_weights(text: &str) -> Result<Vec<Rational>, Failure> {
    text.split(',')
        .map(|t| {
            parse_rational(t.trim())
                .ok_or_else(|| Failure::Input(format!("Parse: `{}` is not a rational weight", t.trim())))
        })
        .collect()
}

/// `star`, `line-natural` (a partition of the line digraph) or `file:<path>`.
fn resolve_partition(g: &WeightedDigraph, choice: &str) -> Result<BicliquePartition, Failure> {
    match choice {
        "star" => Ok(star_partition(g)),
        "line-natural" => Ok(natural_line_partition(g)?.partition),
        _ => match choice.strip_prefix("file:") {
            Some(path) => Ok(parse_partition(g, &read(path)?)?),
            None => {
                Err(Failure::Input(format!("UnknownPartition: `{choice}`; expected star, line-natural or file:<path>")))
            }
        },
    }
}

fn partition_json(p: &BicliquePartition) -> Value {
    p.bicliques().iter().enumerate().map(|(i, q)| json!({ "id": i, "tails": q.tails, "heads": q.heads })).collect()
}

fn report_json(report: &VerificationReport) -> Value {
    let instances: Vec<Value> = report
        .instances
        .iter()
        .map(|inst| {
            json!({
                "index": inst.index,
                "descriptor": inst.descriptor,
                "pass": inst.passed(),
                "checks": inst.checks.iter().map(|c| json!({
                    "label": c.label, "lhs": c.lhs, "rhs": c.rhs, "pass": c.pass,
                })).collect::<Vec<_>>(),
                "error": inst.error,
                "graph": inst.graph,
                "partition": inst.partition,
            })
        })
        .collect();
    json!({
        "command": "verify",
        "suite": report.suite.name(),
        "seed": report.seed,
        "count": report.instances.len(),
        "passed": report.instances.len() - report.failures(),
        "failed": report.failures(),
        "instances": instances,
    })
}
