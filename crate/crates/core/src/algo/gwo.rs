//! Grey wolf optimizer: the three fittest wolves (alpha, beta, delta) steer
//! every wolf, leaders included, through the encircling coefficients A and C.

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::objective::Problem;
use crate::population::{uniform_init, Candidate};
use crate::rng::RngStream;
use crate::trace::{Recorder, Trace};

#[derive(Debug, Clone, PartialEq)]
pub struct GwoParams {
    pub a_initial: f64,
    pub a_final: f64,
}

impl Default for GwoParams {
    fn default() -> Self {
        GwoParams {
            a_initial: 2.0,
            a_final: 0.0,
        }
    }
}

impl GwoParams {
    pub fn validate(&self, pop_size: usize) -> Result<()> {
        if pop_size < 3 {
            return Err(Error::config(format!(
                "gwo needs pop_size >= 3 for its alpha/beta/delta hierarchy, got {pop_size}"
            )));
        }
        if !(self.a_initial >= self.a_final && self.a_final >= 0.0) {
            return Err(Error::config(format!(
                "gwo requires a_initial >= a_final >= 0, got {} and {}",
                self.a_initial, self.a_final
            )));
        }
        Ok(())
    }
}

/// Linear decrease of `a` from `a_initial` (generation 0) to `a_final`.
pub fn a_schedule(gen: usize, total: usize, params: &GwoParams) -> f64 {
    if total == 0 {
        return params.a_initial;
    }
    params.a_initial - (params.a_initial - params.a_final) * gen as f64 / total as f64
}

/// `A = 2 a r1 - a` and `C = 2 r2`.
pub fn coefficients_with(a: f64, r1: f64, r2: f64) -> (f64, f64) {
    (2.0 * a * r1 - a, 2.0 * r2)
}

pub fn coefficients(a: f64, rng: &mut RngStream) -> (f64, f64) {
    let r1 = rng.uniform();
    let r2 = rng.uniform();
    coefficients_with(a, r1, r2)
}

/// Leader positions frozen for one generation.
#[derive(Debug, Clone, PartialEq)]
pub struct Leaders {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub delta: Vec<f64>,
}

/// Pulls `wolf` toward each leader `L` via `D = |C L - x|`,
/// `X_L = L - A D`, and returns the clamped mean of the three `X_L`.
/// `coeffs` holds one `(A, C)` pair per leader in alpha, beta, delta order.
pub fn reposition_with(wolf: &[f64], leaders: &Leaders, coeffs: [(f64, f64); 3], bounds: &Bounds) -> Vec<f64> {
    let mut next = vec![0.0; wolf.len()];
    for (leader, (big_a, big_c)) in [&leaders.alpha, &leaders.beta, &leaders.delta].into_iter().zip(coeffs) {
        for (i, out) in next.iter_mut().enumerate() {
            let d = (big_c * leader[i] - wolf[i]).abs();
            *out += leader[i] - big_a * d;
        }
    }
    for v in &mut next {
        *v /= 3.0;
    }
    bounds.clamp_in_place(&mut next);
    next
}

/// [`reposition_with`] using fresh coefficients for each leader.
pub fn reposition(wolf: &[f64], leaders: &Leaders, a: f64, bounds: &Bounds, rng: &mut RngStream) -> Vec<f64> {
    let coeffs = [coefficients(a, rng), coefficients(a, rng), coefficients(a, rng)];
    reposition_with(wolf, leaders, coeffs, bounds)
}

/// Indices of the wolves sorted by fitness; ties keep index order.
pub fn rank(wolves: &[Candidate]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..wolves.len()).collect();
    order.sort_by(|&i, &j| wolves[i].fitness.total_cmp(&wolves[j].fitness));
    order
}

#[derive(Debug, Clone)]
pub struct GwoState {
    wolves: Vec<Candidate>,
    ranking: Vec<usize>,
    bounds: Bounds,
    params: GwoParams,
}

impl GwoState {
    pub fn init<P: Problem + ?Sized>(
        problem: &mut P,
        pop_size: usize,
        params: &GwoParams,
        rng: &mut RngStream,
    ) -> Result<Self> {
        params.validate(pop_size)?;
        let bounds = problem.bounds().clone();
        let mut wolves = uniform_init(&bounds, pop_size, rng)?;
        for w in &mut wolves {
            w.evaluate(problem);
        }
        Ok(GwoState {
            ranking: rank(&wolves),
            wolves,
            bounds,
            params: params.clone(),
        })
    }

    pub fn leaders(&self) -> Leaders {
        Leaders {
            alpha: self.wolves[self.ranking[0]].position.clone(),
            beta: self.wolves[self.ranking[1]].position.clone(),
            delta: self.wolves[self.ranking[2]].position.clone(),
        }
    }

    /// Repositions every wolf against this generation's leaders, then
    /// evaluates and re-ranks the pack.
    pub fn step<P: Problem + ?Sized>(
        &mut self,
        problem: &mut P,
        gen: usize,
        total: usize,
        rng: &mut RngStream,
    ) {
        let a = a_schedule(gen, total, &self.params);
        let leaders = self.leaders();
        for w in &mut self.wolves {
            w.position = reposition(&w.position, &leaders, a, &self.bounds, rng);
        }
        for w in &mut self.wolves {
            w.evaluate(problem);
        }
        self.ranking = rank(&self.wolves);
    }

    pub fn wolves(&self) -> &[Candidate] {
        &self.wolves
    }

    /// Wolf indices from alpha downwards.
    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    pub fn alpha(&self) -> &Candidate {
        &self.wolves[self.ranking[0]]
    }
}

pub fn gwo_run<P: Problem + ?Sized>(
    problem: &mut P,
    pop_size: usize,
    generations: usize,
    params: &GwoParams,
    rng: &mut RngStream,
) -> Result<Trace> {
    params.validate(pop_size)?;
    let mut recorder = Recorder::new(problem, generations);
    let mut state = GwoState::init(problem, pop_size, params, rng)?;
    recorder.record(problem, state.alpha().fitness, &state.alpha().position);
    for gen in 1..=generations {
        state.step(problem, gen, generations, rng);
        recorder.record(problem, state.alpha().fitness, &state.alpha().position);
    }
    Ok(recorder.finish())
}
