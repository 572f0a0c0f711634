//! `jacgraph`: quasistable multidegrees, class groups and strata of a graph
//! described in a JSON problem file. Reports go to stdout as JSON.

mod commands;
mod problem;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jacgraph::{Kind, DEFAULT_GUARD_EDGES};
use serde_json::Value;

use problem::{Problem, ProblemFile};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Domain(jacgraph::Error),
}

impl CliError {
    pub fn validation(e: jacgraph::Error) -> Self {
        CliError::Invalid(e.to_string())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "jacgraph", version, about = "Quasistable multidegrees and strata of vertex-weighted multigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Problem file (JSON).
    file: PathBuf,
    /// Basepoint vertex name; overrides the file.
    #[arg(long)]
    basepoint: Option<String>,
    /// Print a short summary to stderr.
    #[arg(long)]
    verbose: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Ss,
    Qs,
    Stable,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Ss => Kind::Semistable,
            KindArg::Qs => Kind::Quasistable,
            KindArg::Stable => Kind::Stable,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Spanning-tree count and invariant factors of the class group.
    Complexity {
        #[command(flatten)]
        common: Common,
    },
    /// All multidegrees of the given kind.
    Enum {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "qs")]
        kind: KindArg,
        /// Comma-separated edge ids; overrides the file.
        #[arg(long, value_delimiter = ',')]
        stratum: Option<Vec<String>>,
    },
    /// Reduce a multidegree to its quasistable representative.
    Reduce {
        #[command(flatten)]
        common: Common,
        /// Comma-separated integers, one per vertex.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        multidegree: Vec<i64>,
        #[arg(long, value_delimiter = ',')]
        stratum: Option<Vec<String>>,
    },
    /// Whether the polarization is general and non-degenerate.
    CheckPol {
        #[command(flatten)]
        common: Common,
    },
    /// Per-stratum multidegree counts.
    Strata {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_codim: Option<usize>,
    },
    /// Quasistable cochains on the full subdivision, bucketed by stratum.
    BlowupCheck {
        #[command(flatten)]
        common: Common,
    },
}

fn guard_edges() -> Result<usize, CliError> {
    match std::env::var("JACGRAPH_GUARD_EDGES") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Invalid(format!("JACGRAPH_GUARD_EDGES=`{v}` is not a count"))),
        Err(_) => Ok(DEFAULT_GUARD_EDGES),
    }
}

fn load(common: &Common, stratum: Option<&[String]>) -> Result<Problem, CliError> {
    let file = ProblemFile::read(&common.file)?;
    let p = file.build(common.basepoint.as_deref(), stratum)?;
    if common.verbose {
        eprintln!(
            "{} vertices, {} edges, basepoint {}, |q| = {}, q = {}, stratum {:?}",
            p.graph.vertex_count(),
            p.graph.edge_count(),
            p.graph.vertex_name(p.basepoint),
            p.q.total(),
            commands::polarization_json(&p.graph, &p.q),
            p.stratum
        );
    }
    Ok(p)
}

fn run(cli: Cli) -> Result<(Value, bool), CliError> {
    match cli.command {
        Command::Complexity { common } => {
            let out = commands::complexity_cmd(&load(&common, None)?)?;
            Ok((out, true))
        }
        Command::Enum { common, kind, stratum } => {
            let out = commands::enum_cmd(&load(&common, stratum.as_deref())?, kind.into())?;
            if common.verbose {
                eprintln!("{} multidegrees", out.as_array().map_or(0, Vec::len));
            }
            Ok((out, true))
        }
        Command::Reduce { common, multidegree, stratum } => {
            let out = commands::reduce_cmd(&load(&common, stratum.as_deref())?, multidegree)?;
            if common.verbose {
                eprintln!("{} -> {} in {} steps", out["input"], out["output"], out["steps"]);
            }
            Ok((out, true))
        }
        Command::CheckPol { common } => Ok((commands::checkpol_cmd(&load(&common, None)?)?, true)),
        Command::Strata { common, max_codim } => {
            let out = commands::strata_cmd(&load(&common, None)?, max_codim, guard_edges()?)?;
            if common.verbose {
                eprintln!("{} strata, {} multidegrees", out["rows"].as_array().map_or(0, Vec::len), out["total"]);
            }
            Ok((out, true))
        }
        Command::BlowupCheck { common } => {
            let (out, ok) = commands::blowup_cmd(&load(&common, None)?, guard_edges()?)?;
            if common.verbose {
                eprintln!("total {} expected {}: {}", out["total"], out["expected_total"], if ok { "pass" } else { "FAIL" });
            }
            Ok((out, ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, ok)) => {
            println!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: counts do not match the expected complexities");
                ExitCode::from(3)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
