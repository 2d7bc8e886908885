use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use toric_core::{Config, FieldSpec};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "toric", version, about = "Exact cohomology of moment-angle complexes, Massey products and nestohedra")]
struct Cli {
    /// Coefficient field: q, gf2, gf3, ...
    #[arg(long, global = true)]
    field: Option<String>,
    /// Largest vertex count for full-subcomplex enumeration.
    #[arg(long, global = true, default_value_t = 20)]
    limit: usize,
    /// Free GF(2) bits allowed in an exhaustive Massey enumeration.
    #[arg(long, global = true, default_value_t = 16)]
    budget: usize,
    /// Truncation order of generating series.
    #[arg(long, global = true, default_value_t = 6)]
    order: usize,
    /// Worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Family name: simplex, cube, pe, st, cy, as, pmas, pgamma, q.
    #[arg(long)]
    family: Option<String>,
    /// Family dimension.
    #[arg(long)]
    n: Option<usize>,
    /// JSON file: a complex, or a building set for `nesto`.
    #[arg(long, conflicts_with = "family")]
    input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Summary of a simplicial complex.
    Complex {
        #[command(flatten)]
        source: Source,
        /// List faces whose link is not the full subcomplex on its vertices.
        #[arg(long)]
        links: bool,
        /// Include the complex itself in the output.
        #[arg(long)]
        emit: bool,
    },
    /// Multigraded Betti numbers and the Poincaré polynomial of Z_K.
    Betti {
        #[command(flatten)]
        source: Source,
    },
    /// Massey products of the canonical classes, or a triple search.
    Massey {
        #[command(flatten)]
        source: Source,
        /// Product lengths, `3` or `2..4`.
        #[arg(long)]
        k: Option<String>,
        /// exhaustive-gf2, vanishing or auto.
        #[arg(long, default_value = "auto")]
        strategy: String,
    },
    /// Building sets and their nested set complexes.
    Nesto {
        #[command(flatten)]
        source: Source,
        /// Restrict to a building-set element, e.g. `1,3`.
        #[arg(long)]
        restrict: Option<String>,
        /// Contract a building-set element, e.g. `1,3`.
        #[arg(long, conflicts_with = "restrict")]
        contract: Option<String>,
        /// Include the nested set complex in the output.
        #[arg(long)]
        emit: bool,
    },
    /// The differential ring of polytopes.
    Ring {
        #[command(subcommand)]
        command: RingCommand,
    },
    /// Generating series identities.
    Series {
        #[command(subcommand)]
        command: SeriesCommand,
    },
}

#[derive(Subcommand, Debug)]
enum RingCommand {
    /// Boundary of a polytope class.
    Boundary {
        #[command(flatten)]
        source: Source,
    },
    /// Checks a named formula.
    Verify {
        /// `<family>-boundary`, `links`, `dehn-sommerville`, or a series identity.
        #[arg(long)]
        id: String,
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Closure of a family under the boundary, and its complexity.
    Closure {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 5)]
        dim: usize,
    },
    /// Full-subcomplex embeddings of smaller family members.
    Gdfp {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum SeriesCommand {
    /// Checks one identity, or all of them.
    Verify {
        #[arg(long)]
        id: Option<String>,
    },
    /// Truncated generating series of a family.
    Show {
        #[arg(long)]
        family: String,
    },
    /// Lists the identity ids.
    List,
}

/// Errors that end a command; a failed check is an `Output` with `ok == false`.
#[derive(Debug)]
pub enum Failure {
    Limit(String),
    BadInput(String),
}

impl From<toric_core::Error> for Failure {
    fn from(e: toric_core::Error) -> Self {
        if e.is_resource_limit() {
            Failure::Limit(e.to_string())
        } else {
            Failure::BadInput(e.to_string())
        }
    }
}

pub struct Output {
    pub json: serde_json::Value,
    pub text: String,
    pub ok: bool,
}

fn config(cli: &Cli) -> Result<Config, Failure> {
    let field = match &cli.field {
        Some(f) => FieldSpec::parse(f)?,
        None => FieldSpec::Rational,
    };
    if cli.limit == 0 || cli.budget == 0 || cli.order == 0 || cli.threads == Some(0) {
        return Err(Failure::BadInput("limits and budgets must be positive".into()));
    }
    Ok(Config { field, vertex_limit: cli.limit, massey_budget: cli.budget, series_order: cli.order, threads: cli.threads })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let cfg = config(cli)?;
    if let Some(t) = cfg.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().map_err(|e| Failure::BadInput(e.to_string()))?;
    }
    let explicit_field = cli.field.is_some();
    match &cli.command {
        Command::Complex { source, links, emit } => commands::complex(source, *links, *emit),
        Command::Betti { source } => commands::betti(source, &cfg),
        Command::Massey { source, k, strategy } => commands::massey(source, k.as_deref(), strategy, &cfg, explicit_field),
        Command::Nesto { source, restrict, contract, emit } => {
            commands::nesto(source, restrict.as_deref(), contract.as_deref(), *emit)
        }
        Command::Ring { command } => match command {
            RingCommand::Boundary { source } => commands::ring_boundary(source),
            RingCommand::Verify { id, family, n } => commands::ring_verify(id, family.as_deref(), *n, &cfg),
            RingCommand::Closure { family, dim } => commands::ring_closure(family, *dim),
            RingCommand::Gdfp { family, n } => commands::ring_gdfp(family, *n),
        },
        Command::Series { command } => match command {
            SeriesCommand::Verify { id } => commands::series_verify(id.as_deref(), &cfg),
            SeriesCommand::Show { family } => commands::series_show(family, &cfg),
            SeriesCommand::List => Ok(commands::series_list()),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable output"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(Failure::Limit(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::BadInput(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
