//! Simulated annealing with Metropolis acceptance and geometric cooling.
//!
//! Each generation spends `m` evaluations on Gaussian neighbours of the
//! current point, then cools the temperature once. Generation 0 evaluates
//! `m` uniform samples and starts from the best of them, so SA draws the
//! same initial points as the population methods and spends the same budget.

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::objective::Problem;
use crate::population::{argmin, uniform_init, Candidate};
use crate::rng::RngStream;
use crate::trace::{Recorder, Trace};

#[derive(Debug, Clone, PartialEq)]
pub struct SaParams {
    /// Starting temperature; `None` derives it from the generation-0 samples.
    pub t_initial: Option<f64>,
    /// Geometric cooling factor, strictly inside `(0, 1)`.
    pub alpha: f64,
    /// Neighbour evaluations per generation; `None` means `pop_size`.
    pub neighbors_per_gen: Option<usize>,
    /// Neighbour step standard deviation as a fraction of the domain width.
    pub step_fraction: f64,
}

impl Default for SaParams {
    fn default() -> Self {
        SaParams {
            t_initial: None,
            alpha: 0.95,
            neighbors_per_gen: None,
            step_fraction: 0.1,
        }
    }
}

impl SaParams {
    pub fn validate(&self, pop_size: usize) -> Result<()> {
        if self.neighbors_for(pop_size) == 0 {
            return Err(Error::config("sa needs at least one neighbour per generation"));
        }
        if let Some(t) = self.t_initial {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::config(format!("sa t_initial must be positive, got {t}")));
            }
        }
        check_alpha(self.alpha)?;
        if !(self.step_fraction > 0.0 && self.step_fraction <= 1.0) {
            return Err(Error::config(format!(
                "sa step_fraction must be in (0, 1], got {}",
                self.step_fraction
            )));
        }
        Ok(())
    }

    pub fn neighbors_for(&self, pop_size: usize) -> usize {
        self.neighbors_per_gen.unwrap_or(pop_size)
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::config(format!("sa alpha must be in (0, 1), got {alpha}")));
    }
    Ok(())
}

/// `x + eps` clamped to the box, `eps_i ~ N(0, (step_fraction * width_i)^2)`.
pub fn neighbor(x: &[f64], bounds: &Bounds, step_fraction: f64, rng: &mut RngStream) -> Vec<f64> {
    let mut out: Vec<f64> = x
        .iter()
        .enumerate()
        .map(|(i, v)| v + step_fraction * bounds.width(i) * rng.normal())
        .collect();
    bounds.clamp_in_place(&mut out);
    out
}

/// Probability of taking a move that is `delta_e` worse at temperature `t`.
pub fn acceptance_probability(delta_e: f64, t: f64) -> f64 {
    (-delta_e / t).exp()
}

/// Improvements are always taken; otherwise accept when
/// `exp(-delta_e / t) > u` for a fresh uniform `u`.
pub fn accept(delta_e: f64, improved: bool, t: f64, rng: &mut RngStream) -> Result<bool> {
    if !(t > 0.0) {
        return Err(Error::contract(format!("temperature must be positive, got {t}")));
    }
    if improved {
        return Ok(true);
    }
    Ok(acceptance_probability(delta_e, t) > rng.uniform())
}

/// `alpha * t`.
pub fn cool(t: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(alpha * t)
}

/// `10 * IQR` of `samples`, falling back to `10 * range` and then 1 when the
/// samples are degenerate.
pub fn auto_temperature(samples: &[f64]) -> f64 {
    let mut sorted: Vec<f64> = samples.iter().copied().filter(|v| v.is_finite()).collect();
    sorted.sort_by(f64::total_cmp);
    if sorted.is_empty() {
        return 1.0;
    }
    let spread = quantile(&sorted, 0.75) - quantile(&sorted, 0.25);
    let range = sorted[sorted.len() - 1] - sorted[0];
    if spread > 0.0 {
        10.0 * spread
    } else if range > 0.0 {
        10.0 * range
    } else {
        1.0
    }
}

/// Linear-interpolation quantile of sorted data.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

#[derive(Debug, Clone)]
pub struct SaState {
    current: Candidate,
    best: Candidate,
    temperature: f64,
    bounds: Bounds,
    alpha: f64,
    step_fraction: f64,
    neighbors: usize,
    last_gen_best: Candidate,
    last_accepted: usize,
    last_uphill_proposals: usize,
    last_uphill_accepted: usize,
}

impl SaState {
    pub fn init<P: Problem + ?Sized>(
        problem: &mut P,
        pop_size: usize,
        params: &SaParams,
        rng: &mut RngStream,
    ) -> Result<Self> {
        params.validate(pop_size)?;
        let bounds = problem.bounds().clone();
        let neighbors = params.neighbors_for(pop_size);
        let mut samples = uniform_init(&bounds, neighbors, rng)?;
        for c in &mut samples {
            c.evaluate(problem);
        }
        let temperature = params.t_initial.unwrap_or_else(|| {
            let values: Vec<f64> = samples.iter().map(|c| c.fitness).collect();
            auto_temperature(&values)
        });
        let start = samples.swap_remove(argmin(&samples));
        Ok(SaState {
            current: start.clone(),
            best: start.clone(),
            last_gen_best: start,
            temperature,
            bounds,
            alpha: params.alpha,
            step_fraction: params.step_fraction,
            neighbors,
            last_accepted: 0,
            last_uphill_proposals: 0,
            last_uphill_accepted: 0,
        })
    }

    /// `m` neighbour proposals at the current temperature, then one cooling.
    pub fn step<P: Problem + ?Sized>(&mut self, problem: &mut P, rng: &mut RngStream) -> Result<()> {
        let mut gen_best: Option<Candidate> = None;
        self.last_accepted = 0;
        self.last_uphill_proposals = 0;
        self.last_uphill_accepted = 0;
        for _ in 0..self.neighbors {
            let mut next = Candidate::unevaluated(neighbor(
                &self.current.position,
                &self.bounds,
                self.step_fraction,
                rng,
            ));
            let f_new = next.evaluate(problem);
            let improved = f_new < self.current.fitness;
            let delta_e = (f_new - self.current.fitness).abs();
            if !improved {
                self.last_uphill_proposals += 1;
            }
            if gen_best.as_ref().map_or(true, |b| f_new < b.fitness) {
                gen_best = Some(next.clone());
            }
            if accept(delta_e, improved, self.temperature, rng)? {
                self.last_accepted += 1;
                if !improved {
                    self.last_uphill_accepted += 1;
                }
                if f_new < self.best.fitness {
                    self.best = next.clone();
                }
                self.current = next;
            }
        }
        if let Some(b) = gen_best {
            self.last_gen_best = b;
        }
        // floor at the smallest normal so acceptance stays well defined
        self.temperature = cool(self.temperature, self.alpha)?.max(f64::MIN_POSITIVE);
        Ok(())
    }

    pub fn current(&self) -> &Candidate {
        &self.current
    }

    pub fn best(&self) -> &Candidate {
        &self.best
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    /// Best proposal of the latest generation (the best sample for
    /// generation 0).
    pub fn generation_best(&self) -> &Candidate {
        &self.last_gen_best
    }

    /// Accepted proposals in the latest generation.
    pub fn accepted(&self) -> usize {
        self.last_accepted
    }

    /// `(proposed, accepted)` non-improving moves in the latest generation.
    pub fn uphill(&self) -> (usize, usize) {
        (self.last_uphill_proposals, self.last_uphill_accepted)
    }
}

pub fn sa_run<P: Problem + ?Sized>(
    problem: &mut P,
    pop_size: usize,
    generations: usize,
    params: &SaParams,
    rng: &mut RngStream,
) -> Result<Trace> {
    params.validate(pop_size)?;
    let mut recorder = Recorder::new(problem, generations);
    let mut state = SaState::init(problem, pop_size, params, rng)?;
    let best = state.generation_best();
    recorder.record(problem, best.fitness, &best.position);
    for _ in 0..generations {
        state.step(problem, rng)?;
        let best = state.generation_best();
        recorder.record(problem, best.fitness, &best.position);
    }
    Ok(recorder.finish())
}
