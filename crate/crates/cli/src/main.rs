//! `chipfire`: critical groups, divisors and arithmetical structures from the
//! command line.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 disconnected graph,
//! 4 any other domain error.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use chipfire::arith::{enumerate, smooth_at, smooth_fully, validate};
use chipfire::critgrp::{
    critical_group, directed_critical_group, element_order, reduced_cokernel, spanning_tree_count,
};
use chipfire::divisors::{default_q, gonality, monodromy_pairing, q_reduce};
use chipfire::exactla::smith_diagonal;
use chipfire::graphs::{parse_graph, write_graph, Graph};
use chipfire::randomlab::{run_experiment, ExperimentConfig};
use chipfire::{Divisor, Error, Multigraph};
use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Parser)]
#[command(name = "chipfire", version, about = "Chip-firing and critical groups of multigraphs")]
struct Cli {
    /// Worker threads for parallel work (output does not depend on it).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Critical group, SNF diagonal, spanning-tree count and genus.
    Group {
        /// Graph file, or `-` for stdin.
        file: String,
        /// Use the Laplacian with this vertex's row and column removed.
        #[arg(long, value_name = "LABEL")]
        reduced_at: Option<String>,
        /// Read a directed graph and use its directed Laplacian.
        #[arg(long)]
        directed: bool,
    },
    /// Divisor computations on a graph.
    Divisor {
        file: String,
        #[command(subcommand)]
        action: DivisorAction,
    },
    /// Arithmetical structures on a graph.
    Arith {
        file: String,
        #[command(subcommand)]
        action: ArithAction,
    },
    /// Erdős–Rényi experiment on critical groups; prints a JSON report.
    Random {
        #[arg(long)]
        n: usize,
        /// Edge probability as a fraction, e.g. `1/2`.
        #[arg(long)]
        q: String,
        #[arg(long)]
        samples: u64,
        /// Prime for the Sylow statistics.
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Number of spanning trees (0 for a disconnected graph).
    TreeCount { file: String },
}

#[derive(Subcommand)]
enum DivisorAction {
    /// q-reduced divisor equivalent to D, e.g. `reduce "v1:2 v3:-1"`.
    Reduce {
        divisor: Vec<String>,
        /// Base vertex (default: the last vertex).
        #[arg(long, value_name = "LABEL")]
        q: Option<String>,
    },
    /// Order of a degree-0 divisor in the critical group.
    Order {
        divisor: Vec<String>,
        #[arg(long, value_name = "LABEL")]
        q: Option<String>,
    },
    /// Monodromy pairing of two degree-0 divisors, printed as `a/b`.
    Pairing {
        first: String,
        second: String,
        #[arg(long, value_name = "LABEL")]
        q: Option<String>,
    },
    /// Gonality with a witness divisor.
    Gonality,
}

#[derive(Subcommand)]
enum ArithAction {
    /// All structures with entries up to `--rmax`.
    Enumerate {
        #[arg(long)]
        rmax: u64,
    },
    /// Checks a label vector such as `r=3,2,4,9` and prints d.
    Validate { r: String },
    /// Smooths a structure (fully, or once at `--at`) and prints the result.
    Smooth {
        r: String,
        #[arg(long, value_name = "LABEL")]
        at: Option<String>,
    },
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Domain(Error::Parse { .. } | Error::UnknownVertex(_)) => 2,
            Failure::Domain(Error::Disconnected) => 3,
            Failure::Domain(_) => 4,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Domain(e) => e.to_string(),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read_text(file: &str) -> Result<String, Failure> {
    let read = if file == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        fs::read_to_string(file)
    };
    read.map_err(|e| Failure::Usage(format!("{file}: {e}")))
}

fn load(file: &str) -> Result<Graph, Failure> {
    let text = read_text(file)?;
    parse_graph(&text).map_err(|e| Failure::Usage(format!("{file}: {e}")))
}

fn load_undirected(file: &str) -> Result<Multigraph, Failure> {
    match load(file)? {
        Graph::Undirected(g) => Ok(g),
        Graph::Directed(_) => Err(Failure::Usage(format!(
            "{file} is directed; only `group --directed` accepts directed graphs"
        ))),
    }
}

fn base(g: &Multigraph, q: &Option<String>) -> Result<usize, Failure> {
    match q {
        Some(label) => Ok(g.index_of(label)?),
        None => Ok(default_q(g)),
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn parse_r(text: &str) -> Result<Vec<u64>, Failure> {
    let body = text.strip_prefix("r=").unwrap_or(text);
    let body = body.trim_start_matches('(').trim_end_matches(')');
    body.split(',')
        .map(|t| t.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("expected r=a,b,c,… with positive integers, got `{text}`")))
}

fn cmd_group(file: &str, reduced_at: &Option<String>, directed: bool) -> Outcome {
    let graph = load(file)?;
    match (graph, directed) {
        (Graph::Directed(g), true) => {
            if reduced_at.is_some() {
                return Err(Failure::Usage("--reduced-at applies to undirected graphs".into()));
            }
            let c = directed_critical_group(&g);
            let diag = smith_diagonal(&g.laplacian());
            Ok(format!(
                "group: {}\nfree rank: {}\nsnf: {}\n",
                c.torsion,
                c.free_rank,
                join(&diag)
            ))
        }
        (Graph::Undirected(_), true) => {
            Err(Failure::Usage(format!("{file} has no `directed` header")))
        }
        (Graph::Directed(_), false) => {
            Err(Failure::Usage(format!("{file} is directed; pass --directed")))
        }
        (Graph::Undirected(g), false) => {
            let mut out = String::new();
            match reduced_at {
                Some(label) => {
                    if !g.is_connected() {
                        return Err(Error::Disconnected.into());
                    }
                    let v = g.index_of(label)?;
                    let c = reduced_cokernel(&g, v, v)?;
                    let diag = smith_diagonal(&g.reduced_laplacian(v, v)?);
                    out += &format!("group: {}\nsnf: {}\n", c.torsion, join(&diag));
                }
                None => {
                    let k = critical_group(&g)?;
                    let diag = smith_diagonal(&g.laplacian());
                    out += &format!("group: {k}\nsnf: {}\n", join(&diag));
                }
            }
            out += &format!(
                "spanning trees: {}\ngenus: {}\n",
                spanning_tree_count(&g),
                g.genus()?
            );
            Ok(out)
        }
    }
}

fn cmd_divisor(file: &str, action: &DivisorAction) -> Outcome {
    let g = load_undirected(file)?;
    match action {
        DivisorAction::Reduce { divisor, q } => {
            let d = Divisor::parse(&g, &divisor.join(" "))?;
            let r = q_reduce(&g, &d, base(&g, q)?)?;
            Ok(format!("{}\n", r.render(&g)))
        }
        DivisorAction::Order { divisor, q } => {
            let d = Divisor::parse(&g, &divisor.join(" "))?;
            Ok(format!("{}\n", element_order(&g, &d, base(&g, q)?)?))
        }
        DivisorAction::Pairing { first, second, q } => {
            let d1 = Divisor::parse(&g, first)?;
            let d2 = Divisor::parse(&g, second)?;
            if d1.degree() != d2.degree() {
                return Err(Error::DegreeMismatch(d1.degree(), d2.degree()).into());
            }
            Ok(format!("{}\n", monodromy_pairing(&g, &d1, &d2, base(&g, q)?)?))
        }
        DivisorAction::Gonality => {
            let gon = gonality(&g)?;
            Ok(format!("gonality: {}\nwitness: {}\n", gon.gonality, gon.witness.render(&g)))
        }
    }
}

fn cmd_arith(file: &str, action: &ArithAction) -> Outcome {
    let g = load_undirected(file)?;
    match action {
        ArithAction::Enumerate { rmax } => {
            let e = enumerate(&g, *rmax)?;
            let mut out = format!("{} structures\nr_max: {}\nnote: {}\n", e.len(), e.r_max, e.completeness);
            for s in &e.structures {
                out += &format!("{s}\n");
            }
            Ok(out)
        }
        ArithAction::Validate { r } => {
            let s = validate(&g, &parse_r(r)?)?;
            Ok(format!("{s}\n"))
        }
        ArithAction::Smooth { r, at } => {
            let s = validate(&g, &parse_r(r)?)?;
            let (h, t) = match at {
                Some(label) => smooth_at(&g, &s, g.index_of(label)?)?,
                None => smooth_fully(&g, &s)?,
            };
            Ok(format!("{t}\n{}", write_graph(&Graph::Undirected(h))))
        }
    }
}

fn cmd_random(n: usize, q: &str, samples: u64, p: u64, seed: u64) -> Outcome {
    let q: BigRational = q
        .parse()
        .map_err(|_| Failure::Usage(format!("--q expects a fraction such as 1/2, got `{q}`")))?;
    let config = ExperimentConfig { n, q, samples, p, seed };
    config.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    let report = run_experiment(&config)?;
    let text = serde_json::to_string_pretty(&report.to_json()).expect("serializable");
    Ok(format!("{text}\n"))
}

fn cmd_tree_count(file: &str) -> Outcome {
    let count: BigInt = spanning_tree_count(&load_undirected(file)?);
    Ok(format!("{count}\n"))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Group { file, reduced_at, directed } => cmd_group(file, reduced_at, *directed),
        Command::Divisor { file, action } => cmd_divisor(file, action),
        Command::Arith { file, action } => cmd_arith(file, action),
        Command::Random { n, q, samples, p, seed } => cmd_random(*n, q, *samples, *p, *seed),
        Command::TreeCount { file } => cmd_tree_count(file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("chipfire: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(text) => {
            let _ = io::stdout().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("chipfire: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
