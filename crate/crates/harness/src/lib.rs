//! Benchmark harness: runs the optimizers of `metabench-core` under a shared
//! budget over seeded repeats, aggregates the convergence traces and writes
//! CSV tables and an SVG convergence plot.

pub mod config;
pub mod error;
pub mod experiment;
pub mod output;
pub mod stats;
pub mod svg;

pub use config::{AlgorithmEntry, ExperimentConfig, ObjectiveSpec};
pub use error::{HarnessError, Result};
pub use experiment::{compare_origin_bias, run_experiment, BiasReport, BiasRow, ExperimentOutcome};
pub use stats::{AggregateReport, AlgorithmAggregate, Summary};

use metabench_core::Algorithm;

/// Human-readable listing of algorithm ids, parameter names and defaults.
pub fn list_algorithms() -> String {
    let mut out = String::new();
    for alg in Algorithm::ALL {
        out.push_str(&format!("{}  {} (pop_size >= {})\n", alg.id(), alg.title(), alg.min_pop_size()));
        for (name, default) in alg.default_params().entries() {
            out.push_str(&format!("    {name} = {default}\n"));
        }
    }
    out
}
