//! `kneser`: build, color and analyze generalized Kneser hypergraphs, and
//! re-check the published numeric facts about them.
//!
//! Exit status: 0 success, 1 a checked fact failed, 2 bad input,
//! 3 a search budget ran out before a mandatory value was known.

mod commands;
mod ledger;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "kneser", version, about = "Exact computations on generalized Kneser hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the explicit Kneser hypergraph of a set system.
    Build {
        system: PathBuf,
        #[command(flatten)]
        params: Params,
        #[arg(long, value_enum, default_value_t = VariantArg::Multiset)]
        variant: VariantArg,
        #[command(flatten)]
        output: Output,
    },
    /// Exact chromatic number of a hypergraph file, or of a Kneser hypergraph
    /// given a set system and `--r`.
    Chi {
        input: PathBuf,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        s: Option<String>,
        #[arg(long, value_enum, default_value_t = VariantArg::Multiset)]
        variant: VariantArg,
        #[arg(long, default_value_t = 60)]
        budget_seconds: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Colorability defect with an optimal cover certificate.
    Defect {
        system: PathBuf,
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        output: Output,
    },
    /// Defect, lower bound, both chromatic numbers and the upper bound.
    Bounds {
        system: PathBuf,
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value_t = 60)]
        budget_seconds: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Structural verdicts for a hypergraph and its Kneser representation.
    Represent {
        hypergraph: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Recompute every published fact and print a pass/fail ledger.
    VerifyPaper {
        /// Restrict to one topic (see `ledger::SCOPES`).
        #[arg(long)]
        scope: Option<String>,
        #[arg(long, default_value_t = 60)]
        budget_seconds: u64,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct Params {
    #[arg(long)]
    r: usize,
    /// A constant multiplicity or a comma-separated vector replacing the
    /// one in the file.
    #[arg(long)]
    s: Option<String>,
}

#[derive(Args)]
struct Output {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Multiset,
    Set,
}

impl From<VariantArg> for kneser_core::Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Multiset => kneser_core::Variant::WithMultiplicities,
            VariantArg::Set => kneser_core::Variant::WithoutMultiplicities,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build { system, params, variant, output } => {
            commands::build(&system, params.r, params.s.as_deref(), variant.into(), &output)
        }
        Command::Chi { input, r, s, variant, budget_seconds, output } => {
            commands::chi(&input, r, s.as_deref(), variant.into(), budget_seconds, &output)
        }
        Command::Defect { system, params, output } => commands::defect(&system, params.r, params.s.as_deref(), &output),
        Command::Bounds { system, params, budget_seconds, output } => {
            commands::bounds(&system, params.r, params.s.as_deref(), budget_seconds, &output)
        }
        Command::Represent { hypergraph, output } => commands::represent(&hypergraph, &output),
        Command::VerifyPaper { scope, budget_seconds, output } => {
            commands::verify_paper(scope.as_deref(), budget_seconds, &output)
        }
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            match err.downcast_ref::<kneser_core::Error>() {
                Some(kneser_core::Error::Budget { .. }) => ExitCode::from(commands::BUDGET_EXHAUSTED),
                _ => ExitCode::from(commands::INPUT_ERROR),
            }
        }
    }
}
