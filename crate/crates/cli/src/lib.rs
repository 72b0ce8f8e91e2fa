//! Command-line front end: instance generation, stability checks, adjacency
//! verdicts, paths, skeleton export, diameter and batch verification.
//!
//! Exit codes: 0 on success, 1 when a mathematical assertion fails, 2 for
//! usage or input errors.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod verify;

pub use verify::{run_verify, VerifyOptions};

#[derive(Debug, Parser)]
#[command(
    name = "smt",
    version,
    about = "Stable matchings with ties: adjacency, paths and diameter"
)]
pub struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Largest number of acceptable pairs for exhaustive enumeration.
    #[arg(long, global = true, env = "SMT_ENUM_CAP", default_value_t = smt_core::DEFAULT_ENUMERATION_CAP)]
    pub enum_cap: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an instance file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Check a matching for weak stability.
    Check { file: PathBuf, matching: String },
    /// Decide whether two stable matchings are adjacent on the polytope.
    Adjacent {
        file: PathBuf,
        mu: String,
        nu: String,
        #[arg(long, value_enum, default_value_t = Oracle::Component)]
        oracle: Oracle,
        /// Also print the between-subgraph (DOT, or JSON with --json).
        #[arg(long)]
        explain: bool,
    },
    /// Print a shortest component-flipping path between two stable matchings.
    Path {
        file: PathBuf,
        mu: String,
        nu: String,
    },
    /// Export the skeleton graph of the stable matchings.
    Skeleton {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
    },
    /// Exact diameter of the skeleton graph.
    Diameter {
        file: PathBuf,
        /// Exit 1 if the diameter exceeds floor(n/3), or floor(n/4) without ties.
        #[arg(long)]
        bound_check: bool,
    },
    /// List every stable matching in canonical order.
    Enumerate {
        file: PathBuf,
        /// Print only the number of stable matchings.
        #[arg(long)]
        count: bool,
    },
    /// Export the linear relaxation in LP text format.
    Relaxation { file: PathBuf },
    /// Check every invariant on a batch of random instances.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// Random instance with ties.
    Random {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, default_value = "1/2")]
        tie_prob: smt_core::TieProbability,
        #[command(flatten)]
        out: Output,
    },
    /// Random instance with strict preferences.
    Noties {
        #[command(flatten)]
        shape: Shape,
        #[command(flatten)]
        out: Output,
    },
    /// The family of `t` men and `2t` women whose skeleton diameter is `t`.
    Tight {
        t: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Args)]
pub struct Shape {
    #[arg(long)]
    pub men: usize,
    #[arg(long)]
    pub women: usize,
    /// Longest preference list; defaults to the larger side.
    #[arg(long)]
    pub max_list: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write the instance here and print the path instead of the contents.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 8)]
    pub max_people: usize,
    #[arg(long, default_value = "1/2")]
    pub tie_prob: smt_core::TieProbability,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Oracle {
    Component,
    Rank,
    Lp,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Dot,
    Json,
}

/// Result of one command: the exit code and what to print.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: u8,
    pub report: String,
}

impl CommandOutcome {
    pub fn ok(report: impl Into<String>) -> Self {
        CommandOutcome {
            exit_code: 0,
            report: report.into(),
        }
    }

    pub fn violation(report: impl Into<String>) -> Self {
        CommandOutcome {
            exit_code: 1,
            report: report.into(),
        }
    }

    pub fn input_error(report: impl Into<String>) -> Self {
        CommandOutcome {
            exit_code: 2,
            report: report.into(),
        }
    }
}

pub fn run(cli: &Cli) -> CommandOutcome {
    commands::dispatch(cli)
}
