//! `scheme-minor`: command-line front end for the core crate.

mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use scheme_minor_core::classify::DEFAULT_CYCLE_CAP;
use scheme_minor_core::minor::DEFAULT_MAX_HOST_VERTICES;
use scheme_minor_core::Error;

#[derive(Parser, Debug)]
#[command(name = "scheme-minor", version, about = "Rooted minors, H-schemes and doubled graphs")]
pub struct Cli {
    /// Output format on stdout. Diagnostics always go to stderr.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Largest host accepted by exhaustive minor search.
    #[arg(long, default_value_t = DEFAULT_MAX_HOST_VERTICES, global = true)]
    pub max_host_vertices: usize,

    /// Cap on enumerated cycles in the classifier.
    #[arg(long, default_value_t = DEFAULT_CYCLE_CAP, global = true)]
    pub cycle_cap: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum EffortArg {
    Fast,
    Deep,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check or normalize an H-scheme given as scheme JSON.
    #[command(subcommand)]
    Scheme(SchemeCmd),
    /// Minor containment.
    #[command(subcommand)]
    Minor(MinorCmd),
    /// The doubled graph M'(H) and its rooted contractibility.
    #[command(subcommand)]
    Mprime(MprimeCmd),
    /// Classify a graph by the known structural rules.
    Classify {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, value_enum, default_value_t = EffortArg::Fast)]
        effort: EffortArg,
    },
    /// Exhaustive checks over small connected graphs.
    #[command(subcommand)]
    Atlas(AtlasCmd),
}

#[derive(Subcommand, Debug)]
pub enum SchemeCmd {
    Validate {
        #[arg(long)]
        scheme: PathBuf,
    },
    Normalize {
        #[arg(long)]
        scheme: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum MinorCmd {
    Find {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
        /// Require each pattern vertex to contain its given root.
        #[arg(long, requires = "roots")]
        rooted: bool,
        /// Comma-separated host vertices, one per pattern vertex.
        #[arg(long, value_delimiter = ',')]
        roots: Option<Vec<usize>>,
    },
}

#[derive(Subcommand, Debug)]
pub enum MprimeCmd {
    Build {
        #[command(flatten)]
        graph: GraphArg,
    },
    Decide {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Inducing stable set witness and the model it induces.
    Witness {
        #[command(flatten)]
        graph: GraphArg,
        /// Use this stable set instead of searching for one.
        #[arg(long, value_delimiter = ',')]
        stable: Option<Vec<usize>>,
    },
}

#[derive(Subcommand, Debug)]
pub enum AtlasCmd {
    Verify {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        /// Only bipartite graphs.
        #[arg(long)]
        bipartite: bool,
        /// Worker threads; defaults to SCHEME_MINOR_THREADS or all cores.
        #[arg(long)]
        threads: Option<usize>,
        /// JSON-lines file receiving one record per graph.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct GraphArg {
    /// Edge JSON or graph6 file; `-` reads stdin.
    #[arg(long)]
    pub graph: PathBuf,
}

/// A finished command: a payload, its text rendering, and whether the answer
/// was negative.
pub struct Output {
    pub json: serde_json::Value,
    pub text: String,
    pub negative: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("claims failed: {0}")]
    Claims(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Capacity { .. }) => 3,
            CliError::Core(Error::Internal(_)) | CliError::Claims(_) => 4,
            CliError::Core(_) | CliError::Io { .. } | CliError::Usage(_) => 2,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&out.json).expect("payload serializes"),
                Format::Text => out.text.trim_end().to_string(),
            };
            let _ = writeln!(stdout, "{body}");
            ExitCode::from(u8::from(out.negative))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
