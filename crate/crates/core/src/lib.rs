//! Seeded meta-heuristic optimizers over box-bounded continuous objectives.
//!
//! Five algorithms share one budget model: generation 0 evaluates
//! `pop_size` uniformly drawn points and every later generation spends
//! another `pop_size` evaluations, so a run of `g` generations costs exactly
//! `pop_size * (g + 1)` evaluations whatever the algorithm. All moves are
//! clamped into the box and everything minimizes.
//!
//! ```
//! use metabench_core::{make_objective, run, Algorithm, ObjectiveKind, RunConfig};
//!
//! let mut f = make_objective(ObjectiveKind::Rastrigin, 10, None).unwrap();
//! let trace = run(&mut f, &RunConfig::new(Algorithm::Pso, 10, 100, 7)).unwrap();
//! assert_eq!(trace.entries.len(), 101);
//! assert_eq!(trace.total_evaluations(), 10 * 101);
//! ```

// `!(a < b)` is used deliberately so that NaN parameters are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algo;
pub mod bounds;
pub mod config;
pub mod error;
pub mod objective;
pub mod population;
pub mod rng;
pub mod trace;

pub use bounds::Bounds;
pub use config::{Algorithm, AlgorithmParams, RunConfig};
pub use error::{Error, Result};
pub use objective::{make_objective, peaks, rastrigin, Objective, ObjectiveKind, Problem};
pub use population::{uniform_init, Candidate};
pub use rng::{mix_seed, RngStream};
pub use trace::{Trace, TraceEntry};

/// Runs the configured algorithm on `problem` with a stream seeded from
/// `config.seed`. The configuration is validated before any evaluation.
pub fn run<P: Problem + ?Sized>(problem: &mut P, config: &RunConfig) -> Result<Trace> {
    config.validate()?;
    let mut rng = RngStream::new(config.seed);
    let (n, g) = (config.pop_size, config.generations);
    match &config.params {
        AlgorithmParams::Ga(p) => algo::ga::ga_run(problem, n, g, p, &mut rng),
        AlgorithmParams::Pso(p) => algo::pso::pso_run(problem, n, g, p, &mut rng),
        AlgorithmParams::Gwo(p) => algo::gwo::gwo_run(problem, n, g, p, &mut rng),
        AlgorithmParams::De(p) => algo::de::de_run(problem, n, g, p, &mut rng),
        AlgorithmParams::Sa(p) => algo::sa::sa_run(problem, n, g, p, &mut rng),
    }
}
