//! Seeded multi-algorithm experiments and their on-disk artifacts.

use std::fmt::Write as _;
use std::path::PathBuf;

use metabench_core::{mix_seed, run, Algorithm, AlgorithmParams, Problem, RunConfig, Trace};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::config::{ExperimentConfig, ObjectiveSpec};
use crate::error::{HarnessError, Result};
use crate::output::{aggregate_csv, ensure_dir, fmt_float, run_csv, summary_csv, write_file};
use crate::stats::{AggregateReport, AlgorithmAggregate};
use crate::svg::convergence_svg;

/// Seed of repeat `k`; every algorithm of an experiment shares it.
pub fn repeat_seed(base_seed: u64, k: usize) -> u64 {
    mix_seed(base_seed, k as u64)
}

#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub report: AggregateReport,
    /// Traces per algorithm, in configuration order, indexed by repeat.
    pub traces: Vec<(Algorithm, Vec<Trace>)>,
    pub files: Vec<PathBuf>,
}

impl ExperimentOutcome {
    pub fn traces_of(&self, algorithm: Algorithm) -> Option<&[Trace]> {
        self.traces
            .iter()
            .find(|(a, _)| *a == algorithm)
            .map(|(_, t)| t.as_slice())
    }
}

pub fn run_file_name(algorithm: Algorithm, repeat: usize) -> String {
    format!("{algorithm}_run{repeat:03}.csv")
}

fn resolved_config_json(config: &ExperimentConfig, params: &[AlgorithmParams]) -> Result<String> {
    let kind = config.objective.kind()?;
    let dim = config.objective.dim()?;
    let shift = config.objective.shift.clone().unwrap_or_else(|| vec![0.0; dim]);
    let algorithms: Vec<Value> = params
        .iter()
        .map(|p| {
            let mut map = Map::new();
            for (name, value) in p.resolved(dim, config.pop_size).entries() {
                let v = value
                    .parse::<f64>()
                    .ok()
                    .and_then(|x| serde_json::Number::from_f64(x).map(Value::Number))
                    .unwrap_or(Value::String(value));
                map.insert(name.to_string(), v);
            }
            json!({ "id": p.algorithm().id(), "params": map })
        })
        .collect();
    let seeds: Vec<u64> = (0..config.repeats).map(|k| repeat_seed(config.base_seed, k)).collect();
    let doc = json!({
        "objective": { "name": kind.name(), "dim": dim, "shift": shift },
        "algorithms": algorithms,
        "pop_size": config.pop_size,
        "generations": config.generations,
        "repeats": config.repeats,
        "base_seed": config.base_seed,
        "repeat_seeds": seeds,
        "output_dir": config.output_dir,
    });
    Ok(serde_json::to_string_pretty(&doc).expect("JSON value serializes") + "\n")
}

fn pool(workers: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        if n == 0 {
            return Err(HarnessError::Config("--workers must be at least 1".into()));
        }
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| HarnessError::Config(format!("cannot start worker pool: {e}")))
}

/// Runs every configured algorithm for every repeat and writes:
///
/// - `resolved_config.json` (written first, before any run)
/// - `runs/<algo>_runNNN.csv` per run
/// - `aggregate.csv`, `summary.csv` and `convergence.svg`
///
/// Runs execute on up to `workers` threads (all cores when `None`); results
/// do not depend on the worker count.
pub fn run_experiment(config: &ExperimentConfig, workers: Option<usize>) -> Result<ExperimentOutcome> {
    let params = config.resolve()?;
    let objective = config.objective.build()?;
    let out_dir = &config.output_dir;
    let runs_dir = out_dir.join("runs");
    ensure_dir(&runs_dir)?;
    let resolved_path = out_dir.join("resolved_config.json");
    write_file(&resolved_path, &resolved_config_json(config, &params)?)?;
    let mut files = vec![resolved_path];

    let jobs: Vec<(usize, usize)> = (0..params.len())
        .flat_map(|a| (0..config.repeats).map(move |k| (a, k)))
        .collect();
    let results: Vec<metabench_core::Result<Trace>> = pool(workers)?.install(|| {
        jobs.par_iter()
            .map(|&(a, k)| {
                let mut problem = objective.fresh();
                let run_config = RunConfig {
                    pop_size: config.pop_size,
                    generations: config.generations,
                    seed: repeat_seed(config.base_seed, k),
                    params: params[a].clone(),
                };
                run(&mut problem, &run_config)
            })
            .collect()
    });

    let mut results = results.into_iter();
    let mut traces = Vec::with_capacity(params.len());
    for p in &params {
        let runs: Vec<Trace> = results.by_ref().take(config.repeats).collect::<metabench_core::Result<_>>()?;
        traces.push((p.algorithm(), runs));
    }

    for (alg, runs) in &traces {
        for (k, t) in runs.iter().enumerate() {
            let path = runs_dir.join(run_file_name(*alg, k));
            write_file(&path, &run_csv(t))?;
            files.push(path);
        }
    }
    let report = AggregateReport {
        algorithms: traces
            .iter()
            .map(|(alg, runs)| AlgorithmAggregate::from_traces(*alg, runs))
            .collect(),
    };
    let title = format!(
        "{} (dim {}), pop {}, {} generations, {} repeats",
        objective.name(),
        objective.dim(),
        config.pop_size,
        config.generations,
        config.repeats
    );
    for (name, contents) in [
        ("aggregate.csv", aggregate_csv(&report)),
        ("summary.csv", summary_csv(&report)),
        ("convergence.svg", convergence_svg(&report, &title)),
    ] {
        let path = out_dir.join(name);
        write_file(&path, &contents)?;
        files.push(path);
    }
    Ok(ExperimentOutcome { report, traces, files })
}

/// Shifted over unshifted median final best.
///
/// A zero unshifted median gives `+inf` (or 1 when both are zero).
pub fn bias_ratio(shifted: f64, unshifted: f64) -> f64 {
    if unshifted == 0.0 {
        if shifted == 0.0 {
            1.0
        } else {
            f64::INFINITY.copysign(shifted)
        }
    } else {
        shifted / unshifted
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BiasRow {
    pub algorithm: Algorithm,
    pub unshifted_median: f64,
    pub shifted_median: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone)]
pub struct BiasReport {
    pub rows: Vec<BiasRow>,
    pub unshifted: ExperimentOutcome,
    pub shifted: ExperimentOutcome,
    pub files: Vec<PathBuf>,
}

impl BiasReport {
    pub fn ratio(&self, algorithm: Algorithm) -> Option<f64> {
        self.rows.iter().find(|r| r.algorithm == algorithm).map(|r| r.ratio)
    }
}

/// Runs all five algorithms on the objective with zero shift and with
/// `shift`, under matched repeat seeds, into `unshifted/` and `shifted/`
/// subdirectories, plus `bias.csv`.
pub fn compare_origin_bias(config: &ExperimentConfig, shift: &[f64], workers: Option<usize>) -> Result<BiasReport> {
    let base = config.with_all_algorithms();
    let dim = base.objective.dim()?;
    let variant = |shift: Vec<f64>, sub: &str| ExperimentConfig {
        objective: ObjectiveSpec {
            name: base.objective.name.clone(),
            dim: Some(dim),
            shift: Some(shift),
        },
        output_dir: base.output_dir.join(sub),
        ..base.clone()
    };
    let unshifted_cfg = variant(vec![0.0; dim], "unshifted");
    let shifted_cfg = variant(shift.to_vec(), "shifted");
    // surface shift and config errors before the first run
    unshifted_cfg.resolve()?;
    shifted_cfg.resolve()?;
    ensure_dir(&base.output_dir)?;

    let unshifted = run_experiment(&unshifted_cfg, workers)?;
    let shifted = run_experiment(&shifted_cfg, workers)?;
    let rows: Vec<BiasRow> = unshifted
        .report
        .algorithms
        .iter()
        .zip(&shifted.report.algorithms)
        .map(|(u, s)| BiasRow {
            algorithm: u.algorithm,
            unshifted_median: u.final_best().median,
            shifted_median: s.final_best().median,
            ratio: bias_ratio(s.final_best().median, u.final_best().median),
        })
        .collect();

    let mut csv = String::from("algorithm,unshifted_median,shifted_median,ratio\n");
    for r in &rows {
        let _ = writeln!(
            csv,
            "{},{},{},{}",
            r.algorithm,
            fmt_float(r.unshifted_median),
            fmt_float(r.shifted_median),
            fmt_float(r.ratio)
        );
    }
    let bias_path = base.output_dir.join("bias.csv");
    write_file(&bias_path, &csv)?;
    let mut files = unshifted.files.clone();
    files.extend(shifted.files.iter().cloned());
    files.push(bias_path);
    Ok(BiasReport {
        rows,
        unshifted,
        shifted,
        files,
    })
}
