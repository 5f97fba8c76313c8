//! `sunit`: build, synthesize and classify S-unit difference graphs from
//! the command line. Output is JSON on stdout; exit 1 signals a domain
//! failure (no embedding, no construction), exit 2 a usage error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use sunit_core::analyze::{census_equivalence_classes, classify};
use sunit_core::budget::SearchBudget;
use sunit_core::diophantine::{solve_bounded, UnitEquation};
use sunit_core::graphcore::Graph;
use sunit_core::sintring::{PrimeSet, SInteger};
use sunit_core::synthesis::{
    cubical_to_representation, hypercube_embed, represent_any, represent_forest,
    rescale_representation,
};
use sunit_core::unitgraph::{build_graph, canonicalize, Representation};

#[derive(Parser)]
#[command(name = "sunit", version, about = "S-unit difference graphs")]
struct Cli {
    /// Indent JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Graph of a point set.
    Build {
        #[arg(long)]
        primes: String,
        /// Comma-separated S-integers, e.g. `0,1,3/2`.
        #[arg(long, allow_hyphen_values = true)]
        points: String,
    },
    /// Point set whose graph is the given one.
    Represent {
        #[arg(long)]
        graph: PathBuf,
        /// Fixed prime set; without it a suitable set is chosen.
        #[arg(long)]
        primes: Option<String>,
        #[arg(long, default_value_t = 0)]
        variant: u32,
    },
    /// Move a representation over a single prime to another prime set.
    Rescale {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        primes: String,
        #[arg(long, default_value_t = 0)]
        variant: u32,
    },
    /// Representability verdict.
    Analyze {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        primes: String,
    },
    /// Induced hypercube embedding, or null.
    Embed {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 10)]
        max_dim: usize,
    },
    /// Solutions of x_1 + ... + x_n = 1 in S-units with bounded exponents.
    Units {
        #[arg(long)]
        primes: String,
        #[arg(long)]
        bound: u32,
        #[arg(long, default_value_t = 2)]
        arity: usize,
    },
    /// Canonical representative of a point set's equivalence class.
    Canon {
        #[arg(long)]
        primes: String,
        #[arg(long, allow_hyphen_values = true)]
        points: String,
    },
    /// Equivalence classes of representations inside {0, ..., limit}.
    Census {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        primes: String,
        #[arg(long)]
        limit: u64,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<sunit_core::Error> for Failure {
    fn from(e: sunit_core::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = Result<(String, bool), Failure>;

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn primes(text: &str) -> Result<PrimeSet, Failure> {
    text.parse().map_err(usage)
}

fn points(text: &str, primes: &PrimeSet) -> Result<Vec<SInteger>, Failure> {
    text.split(',')
        .map(|t| SInteger::parse(t, primes).map_err(usage))
        .collect()
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn graph(path: &Path) -> Result<Graph, Failure> {
    Graph::parse(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn render<T: Serialize>(value: &T, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    }
    .expect("output serializes")
}

fn represent(g: &Graph, primes: Option<&PrimeSet>, variant: u32, budget: &SearchBudget) -> Result<Representation, Failure> {
    let Some(primes) = primes else {
        return Ok(represent_any(g, variant)?);
    };
    if variant > 0 {
        return Err(Failure::Usage("--variant applies only without --primes".into()));
    }
    if g.is_forest() {
        return Ok(represent_forest(g, primes, budget)?);
    }
    let dim = g.order().saturating_sub(1).min(16);
    match hypercube_embed(g, dim)? {
        Some(emb) => Ok(cubical_to_representation(g, &emb, primes, budget)?),
        None => Err(Failure::Domain(
            "graph is neither a forest nor cubical; no construction for a fixed prime set".into(),
        )),
    }
}

fn run(cli: Cli) -> Outcome {
    let pretty = cli.pretty;
    let budget = SearchBudget::from_env();
    let ok = |s: String| Ok((s, true));
    match cli.command {
        Command::Build { primes: p, points: a } => {
            let p = primes(&p)?;
            let g = build_graph(&p, &points(&a, &p)?)?;
            ok(render(&g, pretty))
        }
        Command::Represent { graph: path, primes: p, variant } => {
            let g = graph(&path)?;
            let p = p.as_deref().map(primes).transpose()?;
            ok(render(&represent(&g, p.as_ref(), variant, &budget)?, pretty))
        }
        Command::Rescale { rep, primes: p, variant } => {
            let rep: Representation = serde_json::from_str(&read(&rep)?).map_err(usage)?;
            let out = rescale_representation(&rep, &primes(&p)?, variant, &budget)?;
            ok(render(&out, pretty))
        }
        Command::Analyze { graph: path, primes: p } => {
            let verdict = classify(&graph(&path)?, &primes(&p)?);
            ok(render(&verdict, pretty))
        }
        Command::Embed { graph: path, max_dim } => {
            let g = graph(&path)?;
            let emb = hypercube_embed(&g, max_dim).map_err(usage)?;
            let found = emb.is_some();
            Ok((render(&emb, pretty), found))
        }
        Command::Units { primes: p, bound, arity } => {
            let eq = UnitEquation::all_ones(arity, primes(&p)?, bound).map_err(usage)?;
            ok(render(&solve_bounded(&eq).map_err(usage)?, pretty))
        }
        Command::Canon { primes: p, points: a } => {
            let p = primes(&p)?;
            let form: Vec<String> = canonicalize(&p, &points(&a, &p)?)?
                .iter()
                .map(SInteger::to_string)
                .collect();
            ok(render(&form, pretty))
        }
        Command::Census { graph: path, primes: p, limit } => {
            let g = graph(&path)?;
            if g.order() > 8 || limit > 64 {
                return Err(Failure::Usage("census needs |G| ≤ 8 and --limit ≤ 64".into()));
            }
            ok(render(&census_equivalence_classes(&g, &primes(&p)?, limit), pretty))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, success)) => {
            println!("{out}");
            if success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("sunit: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("sunit: {msg}");
            ExitCode::from(1)
        }
    }
}
