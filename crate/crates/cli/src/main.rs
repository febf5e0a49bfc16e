//! `pareto-subset`: generate instances, compute coefficient bounds, solve
//! and classify the bias/size frontier, pick a model, and run baselines.

mod commands;
mod exit;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::LevelFilter;

use exit::Failure;

const LOG_ENV: &str = "PARETO_SUBSET_LOG";

#[derive(Parser, Debug)]
#[command(name = "pareto-subset", version, about = "Exact bi-objective best subset selection for LAD regression")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a random instance: dataset CSV plus `<stem>.truth.json`.
    Gen(GenArgs),
    /// Compute coefficient bounds for a dataset.
    Bounds(BoundsArgs),
    /// Enumerate the nondominated frontier (JSON plus CSV).
    Solve(SolveArgs),
    /// Label frontier points as extreme supported, non-extreme supported or unsupported.
    Classify(ClassifyArgs),
    /// Pick the point closest to the ideal point.
    Select(SelectArgs),
    /// Solve one weighted-sum or goal-programming scalarization.
    Baseline(BaselineArgs),
    /// Solve several instances of one class and print a summary table.
    Bench(BenchArgs),
    /// Write one subproblem in LP file format.
    ExportLp(ExportArgs),
}

#[derive(Args, Debug)]
pub struct ClassArgs {
    /// Class label such as `C(20,40)`; alternative to --p/--n.
    #[arg(long, conflicts_with_all = ["p", "n"])]
    pub class: Option<String>,
    /// Number of coefficients, intercept included.
    #[arg(long, requires = "n")]
    pub p: Option<usize>,
    /// Number of observations.
    #[arg(long, requires = "p")]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(flatten)]
    pub class: ClassArgs,
    /// Dataset CSV to write.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    /// Dataset CSV.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct DataArgs {
    /// Dataset CSV.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Bounds JSON; computed from the data when omitted.
    #[arg(long)]
    pub bounds: Option<PathBuf>,
    /// Branch-and-bound node budget per subproblem.
    #[arg(long, default_value_t = 100_000)]
    pub node_limit: usize,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Frontier JSON; the CSV goes next to it.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    /// Frontier JSON.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Classified frontier JSON; the CSV goes next to it.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct SelectArgs {
    /// Frontier JSON.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Scale both objectives by their range before measuring distance.
    #[arg(long)]
    pub normalized: bool,
    /// Let the empty model be selected.
    #[arg(long)]
    pub include_trivial: bool,
    /// Also write the selected point here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(id = "scalarization", required = true, multiple = false, args = ["lambda", "k"])]
pub struct BaselineArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Weight on the predictor count in `z1 + lambda z2`.
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    /// Cardinality cap of the goal program.
    #[arg(long)]
    pub k: Option<usize>,
    /// Minimize the predictor count among goal-program optima.
    #[arg(long, requires = "k")]
    pub lexicographic: bool,
    /// Drop the cut excluding the empty model.
    #[arg(long)]
    pub include_trivial: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[command(flatten)]
    pub class: ClassArgs,
    /// Instances per class; instance `i` uses seed `seed + i`.
    #[arg(long, default_value_t = 3)]
    pub instances: u64,
    #[arg(long, default_value_t = 100_000)]
    pub node_limit: usize,
    /// Cross-check every frontier against exhaustive search (p <= 12).
    #[arg(long)]
    pub verify: bool,
    /// Also write the rows as JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Goal program `min z1 s.t. z2 <= k`.
    #[arg(long, conflicts_with = "lambda")]
    pub k: Option<usize>,
    /// With --k: the second lexicographic stage `min z2 s.t. z1 <= cap, z2 <= k`.
    #[arg(long, requires = "k")]
    pub z1_cap: Option<f64>,
    /// Weighted sum `min z1 + lambda z2`.
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    /// Drop the cut excluding the empty model.
    #[arg(long)]
    pub include_trivial: bool,
    #[arg(long)]
    pub out: PathBuf,
}

fn init_logging() -> Result<(), Failure> {
    let level = match std::env::var(LOG_ENV).as_deref() {
        Err(_) | Ok("") => LevelFilter::Warn,
        Ok("quiet") => LevelFilter::Off,
        Ok("info") => LevelFilter::Info,
        Ok("debug") => LevelFilter::Debug,
        Ok(other) => return Err(Failure::usage(format!("{LOG_ENV} must be quiet, info or debug, got {other:?}"))),
    };
    env_logger::Builder::new().filter_level(level).format_timestamp(None).init();
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen(a) => commands::gen(&a),
        Command::Bounds(a) => commands::bounds(&a),
        Command::Solve(a) => commands::solve(&a),
        Command::Classify(a) => commands::classify(&a),
        Command::Select(a) => commands::select(&a),
        Command::Baseline(a) => commands::baseline(&a),
        Command::Bench(a) => commands::bench(&a),
        Command::ExportLp(a) => commands::export_lp(&a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.to_string();
            let summary: Vec<&str> = message
                .lines()
                .map(str::trim)
                .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more information"))
                .filter(|l| !l.is_empty())
                .collect();
            eprintln!("{}", Failure::usage(summary.join(" ").trim_start_matches("error: ")).line());
            return ExitCode::from(2);
        }
    };
    let outcome = init_logging().and_then(|()| run(cli));
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.line());
            ExitCode::from(f.code)
        }
    }
}
