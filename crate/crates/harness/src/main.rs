use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use metabench::{
    compare_origin_bias, list_algorithms, run_experiment, AlgorithmEntry, ExperimentConfig, ExperimentOutcome,
    HarnessError, ObjectiveSpec, Result,
};

#[derive(Parser)]
#[command(name = "metabench", version, about = "Equal-budget benchmark of GA, PSO, GWO, DE and SA")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment from a JSON config, or a single algorithm from flags.
    Run(RunArgs),
    /// Run all five algorithms under the config's shared budget.
    Compare {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Paired unshifted/shifted experiment measuring origin bias.
    Bias {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated shift; a single value is repeated in every dimension.
        #[arg(long)]
        shift: String,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// List algorithm ids, parameters and defaults.
    List,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, conflicts_with_all = ["algo", "function"])]
    config: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, requires_all = ["function", "out"])]
    algo: Option<String>,
    #[arg(long)]
    function: Option<String>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long, default_value_t = 50)]
    pop: usize,
    #[arg(long, default_value_t = 100)]
    gens: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    repeats: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated shift; a single value is repeated in every dimension.
    #[arg(long)]
    shift: Option<String>,
    /// Parameter override `key=value`; may be repeated.
    #[arg(long = "param")]
    params: Vec<String>,
}

fn parse_shift(text: &str, dim: usize) -> Result<Vec<f64>> {
    let values = text
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| HarnessError::Config(format!("invalid shift component `{v}`")))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(if values.len() == 1 { vec![values[0]; dim] } else { values })
}

fn shorthand_config(args: &RunArgs) -> Result<ExperimentConfig> {
    let missing = |flag: &str| HarnessError::Config(format!("`run` needs --config or --{flag}"));
    let algo = args.algo.clone().ok_or_else(|| missing("algo"))?;
    let mut objective = ObjectiveSpec {
        name: args.function.clone().ok_or_else(|| missing("function"))?,
        dim: args.dim,
        shift: None,
    };
    if let Some(shift) = &args.shift {
        objective.shift = Some(parse_shift(shift, objective.dim()?)?);
    }
    let mut params = BTreeMap::new();
    for kv in &args.params {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| HarnessError::Config(format!("--param expects key=value, got `{kv}`")))?;
        params.insert(k.trim().to_string(), serde_json::Value::String(v.trim().to_string()));
    }
    Ok(ExperimentConfig {
        objective,
        algorithms: vec![AlgorithmEntry::WithParams { id: algo, params }],
        pop_size: args.pop,
        generations: args.gens,
        repeats: args.repeats,
        base_seed: args.seed,
        output_dir: args.out.clone().ok_or_else(|| missing("out"))?,
    })
}

fn report(outcome: &ExperimentOutcome, out_dir: &Path) {
    eprintln!("{:<6}{:>24}{:>24}", "algo", "median final best", "evaluations");
    for a in &outcome.report.algorithms {
        eprintln!(
            "{:<6}{:>24.10e}{:>24}",
            a.algorithm.id(),
            a.final_best().median,
            a.evaluations.last().copied().unwrap_or(0)
        );
    }
    let runs_dir = out_dir.join("runs");
    for f in outcome.files.iter().filter(|f| !f.starts_with(&runs_dir)) {
        println!("{}", f.display());
    }
    println!("{}", runs_dir.display());
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::List => print!("{}", list_algorithms()),
        Command::Run(args) => {
            let config = match &args.config {
                Some(path) => ExperimentConfig::load(path)?,
                None => shorthand_config(&args)?,
            };
            let outcome = run_experiment(&config, args.workers)?;
            report(&outcome, &config.output_dir);
        }
        Command::Compare { config, workers } => {
            let config = ExperimentConfig::load(&config)?.with_all_algorithms();
            let outcome = run_experiment(&config, workers)?;
            report(&outcome, &config.output_dir);
        }
        Command::Bias { config, shift, workers } => {
            let config = ExperimentConfig::load(&config)?;
            let shift = parse_shift(&shift, config.objective.dim()?)?;
            let bias = compare_origin_bias(&config, &shift, workers)?;
            eprintln!("{:<6}{:>22}{:>22}{:>14}", "algo", "unshifted median", "shifted median", "ratio");
            for r in &bias.rows {
                eprintln!(
                    "{:<6}{:>22.10e}{:>22.10e}{:>14.4}",
                    r.algorithm.id(),
                    r.unshifted_median,
                    r.shifted_median,
                    r.ratio
                );
            }
            report(&bias.unshifted, &config.output_dir.join("unshifted"));
            report(&bias.shifted, &config.output_dir.join("shifted"));
            println!("{}", config.output_dir.join("bias.csv").display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("metabench: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
