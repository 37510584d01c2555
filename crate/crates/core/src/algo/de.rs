//! DE/rand/1/bin: donor `x_r1 + F (x_r2 - x_r3)`, binomial crossover and
//! greedy one-to-one survivor selection.

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::objective::Problem;
use crate::population::{argmin, uniform_init, Candidate};
use crate::rng::RngStream;
use crate::trace::{Recorder, Trace};

#[derive(Debug, Clone, PartialEq)]
pub struct DeParams {
    /// Scaling factor F, in `[0, 2]`.
    pub f_weight: f64,
    /// Crossover rate Cr, in `[0, 1]`.
    pub cr: f64,
}

impl Default for DeParams {
    fn default() -> Self {
        DeParams { f_weight: 0.5, cr: 0.9 }
    }
}

impl DeParams {
    pub fn validate(&self, pop_size: usize) -> Result<()> {
        if pop_size < 4 {
            return Err(Error::config(format!(
                "de needs pop_size >= 4 (target plus three distinct donors), got {pop_size}"
            )));
        }
        if !(0.0..=2.0).contains(&self.f_weight) {
            return Err(Error::config(format!("de f_weight must be in [0, 2], got {}", self.f_weight)));
        }
        if !(0.0..=1.0).contains(&self.cr) {
            return Err(Error::config(format!("de cr must be in [0, 1], got {}", self.cr)));
        }
        Ok(())
    }
}

/// Three distinct indices in `[0, n)`, all different from `target`.
pub fn distinct_indices(n: usize, target: usize, rng: &mut RngStream) -> Result<[usize; 3]> {
    if n < 4 {
        return Err(Error::config(format!("de needs at least 4 individuals, got {n}")));
    }
    let mut picked = [usize::MAX; 3];
    for k in 0..3 {
        picked[k] = loop {
            let r = rng.index(n);
            if r != target && !picked[..k].contains(&r) {
                break r;
            }
        };
    }
    Ok(picked)
}

/// `base + F (plus - minus)`, unclamped.
pub fn donor_from(base: &[f64], plus: &[f64], minus: &[f64], f_weight: f64) -> Vec<f64> {
    base.iter()
        .zip(plus.iter().zip(minus))
        .map(|(b, (p, m))| b + f_weight * (p - m))
        .collect()
}

pub fn donor(pop: &[Candidate], target_index: usize, params: &DeParams, rng: &mut RngStream) -> Result<Vec<f64>> {
    let [r1, r2, r3] = distinct_indices(pop.len(), target_index, rng)?;
    Ok(donor_from(
        &pop[r1].position,
        &pop[r2].position,
        &pop[r3].position,
        params.f_weight,
    ))
}

/// Takes `donor[j]` where `draws[j] <= cr` or `j == j_rand`, else `target[j]`.
pub fn binomial_crossover_with(target: &[f64], donor: &[f64], cr: f64, j_rand: usize, draws: &[f64]) -> Vec<f64> {
    (0..target.len())
        .map(|j| {
            if draws[j] <= cr || j == j_rand {
                donor[j]
            } else {
                target[j]
            }
        })
        .collect()
}

/// Draws `j_rand`, then one uniform per component.
pub fn binomial_crossover(target: &[f64], donor: &[f64], cr: f64, rng: &mut RngStream) -> Vec<f64> {
    let d = target.len();
    let j_rand = rng.index(d);
    let draws: Vec<f64> = (0..d).map(|_| rng.uniform()).collect();
    binomial_crossover_with(target, donor, cr, j_rand, &draws)
}

/// The trial survives when it is at least as good as the target.
pub fn greedy_select(target: Candidate, trial: Candidate) -> Result<Candidate> {
    if !target.is_evaluated() || !trial.is_evaluated() {
        return Err(Error::contract("greedy selection needs evaluated candidates"));
    }
    Ok(if trial.fitness <= target.fitness { trial } else { target })
}

#[derive(Debug, Clone)]
pub struct DeState {
    population: Vec<Candidate>,
    bounds: Bounds,
    params: DeParams,
}

impl DeState {
    pub fn init<P: Problem + ?Sized>(
        problem: &mut P,
        pop_size: usize,
        params: &DeParams,
        rng: &mut RngStream,
    ) -> Result<Self> {
        params.validate(pop_size)?;
        let bounds = problem.bounds().clone();
        let mut population = uniform_init(&bounds, pop_size, rng)?;
        for c in &mut population {
            c.evaluate(problem);
        }
        Ok(DeState {
            population,
            bounds,
            params: params.clone(),
        })
    }

    /// Builds, clamps and evaluates one trial per target against the frozen
    /// parent generation, then applies all selections at once.
    pub fn step<P: Problem + ?Sized>(&mut self, problem: &mut P, rng: &mut RngStream) -> Result<()> {
        let mut next = Vec::with_capacity(self.population.len());
        for (i, target) in self.population.iter().enumerate() {
            let v = donor(&self.population, i, &self.params, rng)?;
            let mut u = binomial_crossover(&target.position, &v, self.params.cr, rng);
            self.bounds.clamp_in_place(&mut u);
            let mut trial = Candidate::unevaluated(u);
            trial.evaluate(problem);
            next.push(greedy_select(target.clone(), trial)?);
        }
        self.population = next;
        Ok(())
    }

    pub fn population(&self) -> &[Candidate] {
        &self.population
    }

    pub fn generation_best(&self) -> &Candidate {
        &self.population[argmin(&self.population)]
    }
}

pub fn de_run<P: Problem + ?Sized>(
    problem: &mut P,
    pop_size: usize,
    generations: usize,
    params: &DeParams,
    rng: &mut RngStream,
) -> Result<Trace> {
    params.validate(pop_size)?;
    let mut recorder = Recorder::new(problem, generations);
    let mut state = DeState::init(problem, pop_size, params, rng)?;
    let best = state.generation_best();
    recorder.record(problem, best.fitness, &best.position);
    for _ in 0..generations {
        state.step(problem, rng)?;
        let best = state.generation_best();
        recorder.record(problem, best.fitness, &best.position);
    }
    Ok(recorder.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::{make_objective, ObjectiveKind};

    #[test]
    fn donor_by_substitution() {
        assert_eq!(donor_from(&[1.0, 1.0], &[2.0, 0.0], &[0.0, 2.0], 0.5), vec![2.0, 0.0]);
    }

    #[test]
    fn zero_difference_or_zero_scale_returns_base() {
        assert_eq!(donor_from(&[1.0, -2.0], &[0.3, 0.3], &[0.3, 0.3], 1.7), vec![1.0, -2.0]);
        assert_eq!(donor_from(&[1.0, -2.0], &[0.3, 0.9], &[2.0, -1.0], 0.0), vec![1.0, -2.0]);
    }

    #[test]
    fn donor_indices_are_distinct_from_each_other_and_target() {
        let mut rng = RngStream::new(17);
        for n in 4..8 {
            for target in 0..n {
                for _ in 0..200 {
                    let [a, b, c] = distinct_indices(n, target, &mut rng).unwrap();
                    let all = [a, b, c, target];
                    for i in 0..4 {
                        assert!(all[i] < n);
                        for j in i + 1..4 {
                            assert_ne!(all[i], all[j]);
                        }
                    }
                }
            }
        }
        assert!(distinct_indices(3, 0, &mut rng).unwrap_err().is_config());
    }

    #[test]
    fn crossover_rate_extremes() {
        let target = [0.0; 5];
        let donor = [1.0, 2.0, 3.0, 4.0, 5.0];
        let mut rng = RngStream::new(3);
        assert_eq!(binomial_crossover(&target, &donor, 1.0, &mut rng), donor.to_vec());
        for _ in 0..50 {
            let trial = binomial_crossover(&target, &donor, 0.0, &mut rng);
            let from_donor: Vec<usize> = (0..5).filter(|&j| trial[j] == donor[j]).collect();
            assert_eq!(from_donor.len(), 1, "{trial:?}");
        }
        let forced = binomial_crossover_with(&target, &donor, 0.0, 2, &[0.5; 5]);
        assert_eq!(forced, vec![0.0, 0.0, 3.0, 0.0, 0.0]);
    }

    #[test]
    fn identical_target_and_donor() {
        let x = [0.4, -1.1, 2.2];
        let mut rng = RngStream::new(5);
        for cr in [0.0, 0.3, 1.0] {
            assert_eq!(binomial_crossover(&x, &x, cr, &mut rng), x.to_vec());
        }
    }

    #[test]
    fn greedy_selection_prefers_trial_on_ties() {
        let target = Candidate::evaluated(vec![0.0], 2.0);
        let better = Candidate::evaluated(vec![1.0], 1.0);
        let worse = Candidate::evaluated(vec![2.0], 3.0);
        let tie = Candidate::evaluated(vec![3.0], 2.0);
        assert_eq!(greedy_select(target.clone(), better.clone()).unwrap(), better);
        assert_eq!(greedy_select(target.clone(), worse).unwrap(), target);
        assert_eq!(greedy_select(target.clone(), tie.clone()).unwrap(), tie);
        assert!(greedy_select(target, Candidate::unevaluated(vec![0.0])).is_err());
    }

    #[test]
    fn population_at_optimum_keeps_its_fitness() {
        let mut f = make_objective(ObjectiveKind::Rastrigin, 2, None).unwrap();
        let mut rng = RngStream::new(1);
        let mut state = DeState::init(&mut f, 6, &DeParams::default(), &mut rng).unwrap();
        for c in &mut state.population {
            c.position = vec![0.0, 0.0];
            c.fitness = 0.0;
        }
        for _ in 0..10 {
            state.step(&mut f, &mut rng).unwrap();
            assert!(state.population().iter().all(|c| c.fitness == 0.0));
        }
    }

    #[test]
    fn rejects_small_population_and_bad_weights() {
        let mut f = make_objective(ObjectiveKind::Peaks, 2, None).unwrap();
        let mut rng = RngStream::new(0);
        assert!(de_run(&mut f, 3, 5, &DeParams::default(), &mut rng).unwrap_err().is_config());
        let bad = DeParams { f_weight: 2.5, cr: 0.5 };
        assert!(de_run(&mut f, 10, 5, &bad, &mut rng).is_err());
        let bad = DeParams { f_weight: 0.5, cr: -0.1 };
        assert!(de_run(&mut f, 10, 5, &bad, &mut rng).is_err());
        assert_eq!(f.evaluations(), 0);
    }
}
