//! Command-line front end for the `blowup-core` library.
//!
//! [`run`] parses arguments, dispatches one verb and returns the exit code
//! together with what should go to standard output and standard error, so
//! the binary is a thin wrapper and tests can drive it in-process.

use std::ffi::OsString;
use std::path::PathBuf;

use blowup_core::rational::parse_rational;
use blowup_core::{BlowupSizes, Rational};
use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub mod commands;
pub mod parse;

const FORMATS: &str = "\
Input formats:
  graph file    line 1 \"k m\", then m lines \"u v\" (0-based vertices).
                '#' starts a comment. The graph must be connected.
  metric file   k lines of k comma-separated rationals (\"p/q\" or integers).
                With `euclid --squared` the entries are squared distances.
  poly file     polynomial JSON as written by `poly`.

Output (JSON on stdout, one document per run):
  polynomial    {\"k\":3,\"terms\":[{\"coeff\":\"-6\",\"subset\":[0,1]},...]}
  univariate    {\"coeffs\":[\"c0\",\"c1\",...]} in ascending degree
  matroid       {\"k\":3,\"feasible\":[[],[0],...]}
  witness       {\"A\":[..],\"B\":[..],\"x\":0,\"violation\":true}
  stability     {\"trials\":n,\"failures\":[{\"x\",\"v\",\"poly\"}],\"verdict\":...}
  Rationals are strings in lowest terms.

Exit status: 0 success, 1 domain error (bad input data, failed precondition),
2 usage error.";

#[derive(Debug, Parser)]
#[command(name = "blowup", version, about = "Exact blowup-polynomial computations", after_help = FORMATS)]
pub struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// A graph or a finite metric space.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Space {
    /// Graph file.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Metric file.
    #[arg(long)]
    pub metric: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpaceInput {
    #[command(flatten)]
    pub space: Space,
    /// Blow the input up first, e.g. `2,1,1`.
    #[arg(long, value_parser = parse_sizes)]
    pub blowup: Option<BlowupSizes>,
}

#[derive(Debug, Args)]
pub struct GraphInput {
    /// Graph file.
    #[arg(long)]
    pub graph: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExchangeKind {
    /// Principal-minor delta-matroid of the modified distance matrix.
    Linear,
    /// Steiner-tree delta-matroid of a tree.
    Tree,
    /// Twin-free subsets, connected witnesses.
    First,
    /// Twin-free subsets, isometric witnesses.
    Second,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Blowup polynomial p_X (polynomial JSON).
    Poly(SpaceInput),
    /// Univariate specialization u_X (univariate JSON).
    Uni(SpaceInput),
    /// Evaluate p_X at a rational point.
    Eval {
        #[command(flatten)]
        input: SpaceInput,
        /// Comma-separated rationals, one per point.
        #[arg(long, required = true, value_delimiter = ',', value_parser = parse_rational_arg)]
        at: Vec<Rational>,
    },
    /// Delta-matroid of nonsingular principal minors of the modified
    /// distance matrix (matroid JSON).
    Matroid(SpaceInput),
    /// Steiner-tree delta-matroid of a tree (matroid JSON).
    TreeMatroid(GraphInput),
    /// Check the symmetric exchange axiom; reports the first violating
    /// witness.
    Exchange {
        #[command(flatten)]
        input: SpaceInput,
        #[arg(long, value_enum, default_value = "linear")]
        kind: ExchangeKind,
    },
    /// Recover a graph from its blowup polynomial.
    Recover {
        #[command(flatten)]
        source: RecoverSource,
    },
    /// Isometry group of a graph, compared with the polynomial's
    /// symmetries.
    Isom(GraphInput),
    /// Complete-multipartite parts and twin vertices of a graph.
    Multipartite(GraphInput),
    /// The equivalent conditions for complete multipartite graphs,
    /// evaluated independently.
    Report {
        #[command(flatten)]
        input: GraphInput,
        /// Line samples for the stability conditions.
        #[arg(long, default_value_t = 32)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Distance characteristic polynomial and its bridge to u_G.
    Spectrum {
        #[command(flatten)]
        input: GraphInput,
        /// Width of the reported eigenvalue interval.
        #[arg(long, value_parser = parse_rational_arg)]
        width: Option<Rational>,
    },
    /// Isolating interval for the largest root of u_X.
    Maxroot {
        #[command(flatten)]
        input: SpaceInput,
        /// Target interval width (default 2^-40).
        #[arg(long, value_parser = parse_rational_arg)]
        width: Option<Rational>,
    },
    /// Sample line restrictions of p_X for real-rootedness (stability JSON).
    StabSample {
        #[command(flatten)]
        input: SpaceInput,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        trials: usize,
        /// Sample the homogenized polynomial instead.
        #[arg(long)]
        homogenized: bool,
    },
    /// Euclidean embeddability, or with --blowup the blowup classification.
    Euclid {
        #[command(flatten)]
        space: Space,
        /// Read the metric file as squared distances.
        #[arg(long, requires = "metric", conflicts_with = "graph")]
        squared: bool,
        #[arg(long, value_parser = parse_sizes)]
        blowup: Option<BlowupSizes>,
    },
    /// The blown-up graph or metric space.
    Blowup {
        #[command(flatten)]
        space: Space,
        #[arg(long, value_parser = parse_sizes)]
        blowup: BlowupSizes,
    },
    /// Randomized check of the blowup-monoid identities.
    MonoidSelftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 40)]
        count: usize,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct RecoverSource {
    /// Polynomial JSON file.
    #[arg(long)]
    pub poly: Option<PathBuf>,
    /// Graph file, round-tripped through its polynomial.
    #[arg(long)]
    pub graph: Option<PathBuf>,
}

fn parse_sizes(s: &str) -> Result<BlowupSizes, String> {
    s.parse().map_err(|e: blowup_core::Error| e.to_string())
}

fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] blowup_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// Exit code plus the text destined for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match commands::execute(&cli.command) {
        Ok((value, ok)) => {
            let mut stdout = if cli.pretty {
                serde_json::to_string_pretty(&value)
            } else {
                serde_json::to_string(&value)
            }
            .expect("JSON values always serialize");
            stdout.push('\n');
            Outcome { code: if ok { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
