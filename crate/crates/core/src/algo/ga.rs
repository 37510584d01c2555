//! Simple generational GA on real-valued genomes: tournament selection,
//! single-point crossover and uniform (resampling) mutation, no elitism.

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::objective::Problem;
use crate::population::{argmin, uniform_gene, uniform_init, Candidate};
use crate::rng::RngStream;
use crate::trace::{Recorder, Trace};

#[derive(Debug, Clone, PartialEq)]
pub struct GaParams {
    pub tournament_size: usize,
    pub crossover_prob: f64,
    /// Per-gene mutation probability; `None` resolves to `1 / dim`.
    pub mutation_prob: Option<f64>,
}

impl Default for GaParams {
    fn default() -> Self {
        GaParams {
            tournament_size: 3,
            crossover_prob: 0.9,
            mutation_prob: None,
        }
    }
}

impl GaParams {
    pub fn mutation_prob_for(&self, dim: usize) -> f64 {
        self.mutation_prob.unwrap_or(1.0 / dim as f64)
    }

    pub fn validate(&self, pop_size: usize) -> Result<()> {
        if pop_size < 2 {
            return Err(Error::config(format!("ga needs pop_size >= 2, got {pop_size}")));
        }
        if self.tournament_size < 1 || self.tournament_size > pop_size {
            return Err(Error::config(format!(
                "ga tournament_size must be in [1, {pop_size}], got {}",
                self.tournament_size
            )));
        }
        check_prob("crossover_prob", self.crossover_prob)?;
        if let Some(p) = self.mutation_prob {
            check_prob("mutation_prob", p)?;
        }
        Ok(())
    }
}

fn check_prob(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::config(format!("ga {name} must be in [0, 1], got {p}")));
    }
    Ok(())
}

/// Lowest-fitness member among the given entrant indices.
pub fn tournament_winner<'a>(pop: &'a [Candidate], entrants: &[usize]) -> Result<&'a Candidate> {
    let mut best: Option<&Candidate> = None;
    for &i in entrants {
        let c = pop
            .get(i)
            .ok_or_else(|| Error::contract(format!("entrant {i} outside population of {}", pop.len())))?;
        if best.map_or(true, |b| c.fitness < b.fitness) {
            best = Some(c);
        }
    }
    best.ok_or_else(|| Error::contract("tournament needs at least one entrant"))
}

/// Draws `k` entrants uniformly with replacement and returns the fittest.
pub fn tournament_select<'a>(pop: &'a [Candidate], k: usize, rng: &mut RngStream) -> Result<&'a Candidate> {
    if pop.is_empty() {
        return Err(Error::contract("tournament over an empty population"));
    }
    if k == 0 || k > pop.len() {
        return Err(Error::contract(format!(
            "tournament size {k} outside [1, {}]",
            pop.len()
        )));
    }
    let entrants: Vec<usize> = (0..k).map(|_| rng.index(pop.len())).collect();
    tournament_winner(pop, &entrants)
}

/// Swaps the tails of two genomes after cut point `cut` (in `1..d`).
pub fn crossover_at(p1: &[f64], p2: &[f64], cut: usize) -> (Vec<f64>, Vec<f64>) {
    let mut c1 = p1[..cut].to_vec();
    c1.extend_from_slice(&p2[cut..]);
    let mut c2 = p2[..cut].to_vec();
    c2.extend_from_slice(&p1[cut..]);
    (c1, c2)
}

/// With probability `prob`, single-point crossover at a cut drawn uniformly
/// from `[1, d-1]`; otherwise (or when `d < 2`) the children copy the parents.
pub fn single_point_crossover(
    p1: &Candidate,
    p2: &Candidate,
    prob: f64,
    rng: &mut RngStream,
) -> Result<(Candidate, Candidate)> {
    let d = p1.position.len();
    if p2.position.len() != d {
        return Err(Error::contract(format!(
            "crossover parents differ in dimension: {d} vs {}",
            p2.position.len()
        )));
    }
    let crossed = rng.uniform() < prob;
    if !crossed || d < 2 {
        return Ok((
            Candidate::unevaluated(p1.position.clone()),
            Candidate::unevaluated(p2.position.clone()),
        ));
    }
    let cut = rng.int_inclusive(1, d - 1);
    let (c1, c2) = crossover_at(&p1.position, &p2.position, cut);
    Ok((Candidate::unevaluated(c1), Candidate::unevaluated(c2)))
}

/// Resamples each gene, with probability `prob`, uniformly inside its bounds.
pub fn uniform_mutate(mut c: Candidate, prob: f64, bounds: &Bounds, rng: &mut RngStream) -> Candidate {
    let mut changed = false;
    for i in 0..c.position.len() {
        if rng.uniform() < prob {
            c.position[i] = uniform_gene(bounds, i, rng);
            changed = true;
        }
    }
    if changed {
        c.fitness = f64::NAN;
    }
    c
}

/// Population state of a GA run between generations.
#[derive(Debug, Clone)]
pub struct GaState {
    population: Vec<Candidate>,
    bounds: Bounds,
    params: GaParams,
    mutation_prob: f64,
}

impl GaState {
    /// Draws and evaluates the initial population.
    pub fn init<P: Problem + ?Sized>(
        problem: &mut P,
        pop_size: usize,
        params: &GaParams,
        rng: &mut RngStream,
    ) -> Result<Self> {
        params.validate(pop_size)?;
        let bounds = problem.bounds().clone();
        let mut population = uniform_init(&bounds, pop_size, rng)?;
        for c in &mut population {
            c.evaluate(problem);
        }
        Ok(GaState {
            population,
            mutation_prob: params.mutation_prob_for(bounds.dim()),
            bounds,
            params: params.clone(),
        })
    }

    /// One generational replacement: the children become the population.
    pub fn step<P: Problem + ?Sized>(&mut self, problem: &mut P, rng: &mut RngStream) -> Result<()> {
        let pop_size = self.population.len();
        let pairs = pop_size.div_ceil(2);
        let mut children = Vec::with_capacity(2 * pairs);
        for _ in 0..pairs {
            let p1 = tournament_select(&self.population, self.params.tournament_size, rng)?;
            let p2 = tournament_select(&self.population, self.params.tournament_size, rng)?;
            let (c1, c2) = single_point_crossover(p1, p2, self.params.crossover_prob, rng)?;
            children.push(uniform_mutate(c1, self.mutation_prob, &self.bounds, rng));
            children.push(uniform_mutate(c2, self.mutation_prob, &self.bounds, rng));
        }
        // odd population: the last child is dropped after mutation
        children.truncate(pop_size);
        for c in &mut children {
            c.evaluate(problem);
        }
        self.population = children;
        Ok(())
    }

    pub fn population(&self) -> &[Candidate] {
        &self.population
    }

    pub fn generation_best(&self) -> &Candidate {
        &self.population[argmin(&self.population)]
    }
}

pub fn ga_run<P: Problem + ?Sized>(
    problem: &mut P,
    pop_size: usize,
    generations: usize,
    params: &GaParams,
    rng: &mut RngStream,
) -> Result<Trace> {
    params.validate(pop_size)?;
    let mut recorder = Recorder::new(problem, generations);
    let mut state = GaState::init(problem, pop_size, params, rng)?;
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

    fn cand(pos: &[f64], f: f64) -> Candidate {
        Candidate::evaluated(pos.to_vec(), f)
    }

    #[test]
    fn tournament_picks_min_of_drawn_subset() {
        let pop = vec![cand(&[0.0], 3.0), cand(&[1.0], 1.0), cand(&[2.0], 2.0)];
        assert_eq!(tournament_winner(&pop, &[0, 2]).unwrap().fitness, 2.0);
        assert_eq!(tournament_winner(&pop, &[0, 1, 2]).unwrap().fitness, 1.0);
        assert!(tournament_winner(&pop, &[]).is_err());
    }

    #[test]
    fn full_tournament_usually_finds_global_best() {
        let pop: Vec<_> = (0..4).map(|i| cand(&[i as f64], 10.0 - i as f64)).collect();
        let mut rng = RngStream::new(3);
        let mut hits = 0;
        for _ in 0..200 {
            if tournament_select(&pop, 4, &mut rng).unwrap().fitness == 7.0 {
                hits += 1;
            }
        }
        // P(index 3 drawn among 4 with replacement) = 1 - (3/4)^4 ~ 0.68
        assert!(hits > 100 && hits < 170, "hits = {hits}");
    }

    #[test]
    fn single_entrant_tournament_is_uniform() {
        let pop: Vec<_> = (0..4).map(|i| cand(&[i as f64], i as f64)).collect();
        let mut rng = RngStream::new(11);
        let mut counts = [0usize; 4];
        for _ in 0..8000 {
            counts[tournament_select(&pop, 1, &mut rng).unwrap().fitness as usize] += 1;
        }
        for c in counts {
            assert!((1800..2200).contains(&c), "{counts:?}");
        }
    }

    #[test]
    fn tournament_rejects_bad_sizes() {
        let pop = vec![cand(&[0.0], 1.0)];
        let mut rng = RngStream::new(0);
        assert!(tournament_select(&[], 1, &mut rng).is_err());
        assert!(tournament_select(&pop, 2, &mut rng).is_err());
        assert!(tournament_select(&pop, 0, &mut rng).is_err());
    }

    #[test]
    fn crossover_at_fixed_cut() {
        let (a, b) = crossover_at(&[1.0; 4], &[2.0; 4], 2);
        assert_eq!(a, vec![1.0, 1.0, 2.0, 2.0]);
        assert_eq!(b, vec![2.0, 2.0, 1.0, 1.0]);
    }

    #[test]
    fn zero_crossover_prob_copies_parents() {
        let p1 = cand(&[1.0, 2.0, 3.0], 0.0);
        let p2 = cand(&[4.0, 5.0, 6.0], 0.0);
        let mut rng = RngStream::new(5);
        for _ in 0..50 {
            let (a, b) = single_point_crossover(&p1, &p2, 0.0, &mut rng).unwrap();
            assert_eq!(a.position, p1.position);
            assert_eq!(b.position, p2.position);
        }
    }

    #[test]
    fn identical_parents_give_identical_children() {
        let p = cand(&[0.5, -1.0, 2.0, 0.0], 1.0);
        let mut rng = RngStream::new(8);
        for _ in 0..50 {
            let (a, b) = single_point_crossover(&p, &p, 1.0, &mut rng).unwrap();
            assert_eq!(a.position, p.position);
            assert_eq!(b.position, p.position);
        }
    }

    #[test]
    fn one_dimensional_crossover_degenerates_to_copies() {
        let p1 = cand(&[1.0], 0.0);
        let p2 = cand(&[2.0], 0.0);
        let (a, b) = single_point_crossover(&p1, &p2, 1.0, &mut RngStream::new(0)).unwrap();
        assert_eq!((a.position[0], b.position[0]), (1.0, 2.0));
    }

    #[test]
    fn crossover_cut_is_interior() {
        let p1 = cand(&[1.0; 5], 0.0);
        let p2 = cand(&[2.0; 5], 0.0);
        let mut rng = RngStream::new(2);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..500 {
            let (a, _) = single_point_crossover(&p1, &p2, 1.0, &mut rng).unwrap();
            let cut = a.position.iter().take_while(|&&v| v == 1.0).count();
            assert!((1..5).contains(&cut));
            seen.insert(cut);
        }
        assert_eq!(seen.len(), 4);
    }

    #[test]
    fn mutation_rates_zero_and_one() {
        let b = Bounds::uniform(3, -3.0, 3.0).unwrap();
        let mut rng = RngStream::new(4);
        let c = cand(&[0.1, 0.2, 0.3], 5.0);
        let same = uniform_mutate(c.clone(), 0.0, &b, &mut rng);
        assert_eq!(same, c);
        let resampled = uniform_mutate(c.clone(), 1.0, &b, &mut rng);
        assert!(resampled.position.iter().zip(&c.position).all(|(a, b)| a != b));
        assert!(b.contains(&resampled.position));
        assert!(!resampled.is_evaluated());
    }

    #[test]
    fn zero_generations_reports_initial_best() {
        let mut f = make_objective(ObjectiveKind::Peaks, 2, None).unwrap();
        let t = ga_run(&mut f, 6, 0, &GaParams::default(), &mut RngStream::new(1)).unwrap();
        assert_eq!(t.entries.len(), 1);
        assert_eq!(t.total_evaluations(), 6);
    }

    #[test]
    fn odd_population_keeps_size_and_budget() {
        let mut f = make_objective(ObjectiveKind::Rastrigin, 3, None).unwrap();
        let t = ga_run(&mut f, 7, 10, &GaParams::default(), &mut RngStream::new(1)).unwrap();
        assert_eq!(t.total_evaluations(), 7 * 11);
    }

    #[test]
    fn no_variation_never_creates_new_genomes() {
        let mut f = make_objective(ObjectiveKind::Rastrigin, 3, None).unwrap();
        let params = GaParams {
            tournament_size: 2,
            crossover_prob: 0.0,
            mutation_prob: Some(0.0),
        };
        let mut rng = RngStream::new(12);
        let t = ga_run(&mut f, 8, 30, &params, &mut rng).unwrap();
        // best-so-far can only come from the initial population
        let first = t.entries[0].best_so_far;
        assert!(t.best_so_far().all(|v| v == first));

        let mut state = GaState::init(&mut f, 8, &params, &mut rng).unwrap();
        let distinct = |s: &GaState| {
            let mut v: Vec<Vec<u64>> = s
                .population()
                .iter()
                .map(|c| c.position.iter().map(|x| x.to_bits()).collect())
                .collect();
            v.sort();
            v.dedup();
            v
        };
        let mut prev = distinct(&state);
        for _ in 0..30 {
            state.step(&mut f, &mut rng).unwrap();
            let now = distinct(&state);
            assert_eq!(state.population().len(), 8);
            assert!(now.len() <= prev.len());
            assert!(now.iter().all(|g| prev.contains(g)));
            prev = now;
        }
    }

    #[test]
    fn rejects_invalid_params() {
        let mut f = make_objective(ObjectiveKind::Peaks, 2, None).unwrap();
        let mut rng = RngStream::new(0);
        assert!(ga_run(&mut f, 1, 5, &GaParams::default(), &mut rng).unwrap_err().is_config());
        let big_tournament = GaParams {
            tournament_size: 9,
            ..GaParams::default()
        };
        assert!(ga_run(&mut f, 4, 5, &big_tournament, &mut rng).is_err());
        let bad_prob = GaParams {
            crossover_prob: 1.5,
            ..GaParams::default()
        };
        assert!(ga_run(&mut f, 4, 5, &bad_prob, &mut rng).is_err());
        assert_eq!(f.evaluations(), 0);
    }
}
