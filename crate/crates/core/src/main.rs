use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use linked_bandits::complexity::bound_report;
use linked_bandits::env::{play, read_means_file, PlayRequest, RngStream, SamplingMode};
use linked_bandits::harness::{
    bound_overlay, emit_csv, emit_svg, run_experiment, summarize, ScenarioConfig, ScenarioKind, StrategyKind,
};
use linked_bandits::Error;

const USAGE_ERROR: u8 = 1;
const RUNTIME_ERROR: u8 = 2;

#[derive(Parser)]
#[command(
    name = "linked-bandits",
    version,
    about = "Best-arm identification experiments for linked bandits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run Monte Carlo trials and write one CSV row per trial.
    Run(RunArgs),
    /// Print the gap profile and the four complexity bounds of a means file.
    Bounds {
        #[arg(long)]
        means: PathBuf,
        #[arg(long)]
        delta: f64,
    },
    /// Execute a single play and print the revealed prefix.
    Play {
        #[arg(long)]
        means: PathBuf,
        /// Comma-separated one-based arm numbers, strictly increasing.
        #[arg(long, value_delimiter = ',', required = true)]
        select: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    scenario: String,
    #[arg(long, conflicts_with = "n_grid")]
    n: Option<usize>,
    /// Comma-separated arm counts.
    #[arg(long, value_delimiter = ',')]
    n_grid: Option<Vec<usize>>,
    #[arg(long)]
    delta: f64,
    /// maximal, uniform, ege or all.
    #[arg(long, default_value = "all")]
    strategy: String,
    #[arg(long, default_value_t = 1)]
    trials: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// One-based position of the best arm (one-sparse only); defaults to the last arm.
    #[arg(long)]
    best_index: Option<usize>,
    #[arg(long)]
    means: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long, default_value_t = 100_000_000)]
    play_cap: u64,
    /// Simulate every play individually instead of in binomial blocks.
    #[arg(long)]
    per_play: bool,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn build_config(args: &RunArgs) -> Result<ScenarioConfig, Failure> {
    let usage = |e: Error| Failure::Usage(e.to_string());
    let kind: ScenarioKind = args.scenario.parse().map_err(usage)?;
    let strategies = match args.strategy.as_str() {
        "all" => StrategyKind::ALL.to_vec(),
        s => vec![s.parse().map_err(usage)?],
    };
    let n_grid = match (&args.n, &args.n_grid) {
        (Some(n), _) => vec![*n],
        (None, Some(grid)) => grid.clone(),
        (None, None) if kind == ScenarioKind::File => Vec::new(),
        (None, None) => return Err(Failure::Usage("one of --n or --n-grid is required".into())),
    };
    if kind == ScenarioKind::File && args.means.is_none() {
        return Err(Failure::Usage("--scenario file requires --means".into()));
    }
    let best_index = match args.best_index {
        Some(0) => return Err(Failure::Usage("--best-index is one-based".into())),
        other => other.map(|b| b - 1),
    };
    Ok(ScenarioConfig {
        kind,
        n_grid,
        best_index,
        delta: args.delta,
        strategies,
        trials: args.trials,
        seed: args.seed,
        means_path: args.means.clone(),
        play_cap: args.play_cap,
        mode: if args.per_play {
            SamplingMode::PerPlay
        } else {
            SamplingMode::Aggregated
        },
    })
}

fn run(args: RunArgs) -> Result<(), Failure> {
    let config = build_config(&args)?;
    // validation and means-file loading happen before any trial runs
    config.instances().map_err(|e| Failure::Usage(e.to_string()))?;
    let rows = run_experiment(&config)?;
    emit_csv(&rows, &args.out)?;
    if let Some(path) = &args.svg {
        emit_svg(&rows, &bound_overlay(&config)?, path)?;
    }

    println!("scenario     n  strategy  trials  mean_plays  mean_plays_total  error_rate  failures");
    for c in summarize(&rows) {
        println!(
            "{:<10} {:>4}  {:<8} {:>7}  {:>10.1}  {:>16.1}  {:>10.3}  {:>8}",
            c.scenario.name(),
            c.n,
            c.strategy.name(),
            c.trials,
            c.mean_plays,
            c.mean_plays_total,
            c.error_rate(),
            c.failures
        );
    }
    if rows.iter().all(|r| r.fail_reason.is_some()) {
        return Err(Failure::Runtime("every trial failed (play cap)".into()));
    }
    Ok(())
}

fn bounds(means: PathBuf, delta: f64) -> Result<(), Failure> {
    let instance = read_means_file(&means).map_err(|e| Failure::Usage(e.to_string()))?;
    let (profile, report) = bound_report(instance.means(), delta).map_err(|e| Failure::Usage(e.to_string()))?;
    println!("arms: {}", profile.n());
    println!("best arm: {} (mean {})", profile.best_index + 1, profile.best_mean);
    println!("min gap: {}", profile.min_gap);
    println!("survival first n-1: {}", profile.survival_prefix);
    println!("survival all: {}", profile.survival_all);
    println!("delta: {}", report.delta);
    println!("bound maximal: {}", report.maximal);
    println!("bound uniform: {}", report.uniform);
    println!("bound ege: {}", report.ege);
    println!("bound lower: {}", report.lower);
    println!("convention: {}", report.convention);
    Ok(())
}

fn play_once(means: PathBuf, select: Vec<usize>, seed: u64) -> Result<(), Failure> {
    let instance = read_means_file(&means).map_err(|e| Failure::Usage(e.to_string()))?;
    if select.contains(&0) {
        return Err(Failure::Usage("--select takes one-based arm numbers".into()));
    }
    let request = PlayRequest::new(select.iter().map(|a| a - 1).collect(), instance.n())
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let feedback = play(&instance, &request, &mut RngStream::new(seed, 0))?;
    let join = |v: Vec<String>| v.join(",");
    println!(
        "sampled: {}",
        join(feedback.sampled().iter().map(|a| (a + 1).to_string()).collect())
    );
    println!(
        "rewards: {}",
        join(feedback.rewards().iter().map(|&r| u8::from(r).to_string()).collect())
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(USAGE_ERROR)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::Bounds { means, delta } => bounds(means, delta),
        Command::Play { means, select, seed } => play_once(means, select, seed),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE_ERROR)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(RUNTIME_ERROR)
        }
    }
}
