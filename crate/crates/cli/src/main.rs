use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use prealg_core::DEFAULT_BUDGET;

mod commands;
mod text;

use commands::Outcome;

/// Exact computations with finite-dimensional nonassociative algebras.
#[derive(Parser, Debug)]
#[command(name = "prealg", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Maximum number of items any single enumeration may visit.
    #[arg(long, default_value_t = DEFAULT_BUDGET, global = true)]
    budget: u64,
    /// Append wall-clock time to the report (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Test structural identities (all of them by default).
    Check(CheckArgs),
    /// Report which morphism conditions a linear map satisfies.
    ClassifyMap(ClassifyMapArgs),
    /// Enumerate or verify idempotent endomorphisms of a given kind.
    Idempotents(IdempotentsArgs),
    /// Split the product into its commutative and anticommutative halves.
    Decompose(DecomposeArgs),
    /// Build the graded double with parameters mu and lambda.
    Double(DoubleArgs),
    /// Generator membership and ideal dimensions in the truncated tensor algebra.
    Tensor(TensorArgs),
    /// Quotient by an ideal for the dot, bracket or circle product.
    Quotient(QuotientArgs),
    /// Commutator of two ideals.
    Commutator(CommutatorArgs),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("which").args(["identity", "all"])))]
struct CheckArgs {
    algebra: PathBuf,
    /// Identity to test; repeatable.
    #[arg(long)]
    identity: Vec<String>,
    #[arg(long)]
    all: bool,
}

#[derive(Args, Debug)]
struct ClassifyMapArgs {
    algebra: PathBuf,
    map: PathBuf,
    /// Target algebra when the map is not an endomorphism.
    #[arg(long)]
    target: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").args(["enumerate", "verify"]).required(true)))]
struct IdempotentsArgs {
    algebra: PathBuf,
    /// pre, gen or anti.
    #[arg(long)]
    kind: String,
    #[arg(long)]
    enumerate: bool,
    /// Map file holding a candidate idempotent.
    #[arg(long, value_name = "MAP")]
    verify: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    algebra: PathBuf,
    /// Directory to write the two halves into.
    #[arg(long, short = 'o')]
    out_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DoubleArgs {
    algebra: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    /// File to write the doubled algebra to.
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TensorArgs {
    algebra: PathBuf,
    /// prelie or lieadm.
    #[arg(long)]
    kind: String,
    #[arg(long, default_value_t = 4)]
    max_degree: usize,
}

#[derive(Args, Debug)]
struct QuotientArgs {
    algebra: PathBuf,
    subspace: PathBuf,
    #[arg(long, value_enum, default_value_t = ProductArg::Dot)]
    product: ProductArg,
    /// File to write the quotient algebra to.
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ProductArg {
    Dot,
    Bracket,
    Circle,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("commutator").args(["pre", "huq"]).required(true)))]
struct CommutatorArgs {
    algebra: PathBuf,
    left: PathBuf,
    right: PathBuf,
    /// Commutator of pre-ideals, taken with the bracket.
    #[arg(long)]
    pre: bool,
    /// Huq=Smith commutator of ideals.
    #[arg(long)]
    huq: bool,
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let budget = cli.budget;
    match &cli.command {
        Command::Check(a) => commands::check(&a.algebra, &a.identity, budget),
        Command::ClassifyMap(a) => commands::classify_map(&a.algebra, &a.map, a.target.as_deref()),
        Command::Idempotents(a) => commands::idempotents(&a.algebra, &a.kind, a.verify.as_deref(), budget),
        Command::Decompose(a) => commands::decompose(&a.algebra, a.out_dir.as_deref()),
        Command::Double(a) => commands::double(&a.algebra, &a.mu, &a.lambda, a.output.as_deref()),
        Command::Tensor(a) => commands::tensor(&a.algebra, &a.kind, a.max_degree, budget),
        Command::Quotient(a) => {
            let kind = match a.product {
                ProductArg::Dot => prealg_core::ProductKind::Dot,
                ProductArg::Bracket => prealg_core::ProductKind::Bracket,
                ProductArg::Circle => prealg_core::ProductKind::Circle,
            };
            commands::quotient(&a.algebra, &a.subspace, kind, a.output.as_deref())
        }
        Command::Commutator(a) => commands::commutator(&a.algebra, &a.left, &a.right, a.pre),
    }
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<prealg_core::Error>() {
        Some(prealg_core::Error::BudgetExceeded { .. }) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(mut outcome) => {
            if cli.timing {
                outcome.set_elapsed(start.elapsed());
            }
            match cli.format {
                Format::Json => print!("{}", outcome.json()),
                Format::Text => print!("{}", outcome.text()),
            }
            ExitCode::from(if outcome.holds { 0 } else { 1 })
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
