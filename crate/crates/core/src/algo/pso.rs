//! Global-best particle swarm with a linearly decreasing inertia weight.

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::objective::Problem;
use crate::population::uniform_init;
use crate::rng::RngStream;
use crate::trace::{Recorder, Trace};

#[derive(Debug, Clone, PartialEq)]
pub struct PsoParams {
    /// Cognitive weight (attraction to the personal best).
    pub c1: f64,
    /// Social weight (attraction to the global best).
    pub c2: f64,
    pub w_min: f64,
    pub w_max: f64,
    /// Per-dimension speed limit as a fraction of the domain width.
    pub v_max_fraction: f64,
}

impl Default for PsoParams {
    fn default() -> Self {
        PsoParams {
            c1: 2.0,
            c2: 2.0,
            w_min: 0.4,
            w_max: 0.9,
            v_max_fraction: 0.5,
        }
    }
}

impl PsoParams {
    pub fn validate(&self, pop_size: usize) -> Result<()> {
        if pop_size < 1 {
            return Err(Error::config("pso needs pop_size >= 1"));
        }
        if !(self.c1 >= 0.0 && self.c2 >= 0.0) {
            return Err(Error::config(format!(
                "pso c1, c2 must be non-negative, got {}, {}",
                self.c1, self.c2
            )));
        }
        if !(self.w_min <= self.w_max) {
            return Err(Error::config(format!(
                "pso w_min ({}) must not exceed w_max ({})",
                self.w_min, self.w_max
            )));
        }
        if !(self.v_max_fraction > 0.0 && self.v_max_fraction <= 1.0) {
            return Err(Error::config(format!(
                "pso v_max_fraction must be in (0, 1], got {}",
                self.v_max_fraction
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Particle {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub fitness: f64,
    pub personal_best_position: Vec<f64>,
    pub personal_best_fitness: f64,
}

/// Linear schedule from `w_max` at generation 0 down to `w_min` at `total`.
pub fn inertia_at(gen: usize, total: usize, params: &PsoParams) -> f64 {
    if total == 0 {
        return params.w_max;
    }
    params.w_max - (params.w_max - params.w_min) * gen as f64 / total as f64
}

/// `v' = w v + c1 r1 (P - x) + c2 r2 (G - x)`, each component clamped to
/// `[-v_max[i], v_max[i]]`. `r1` and `r2` are scalars shared by all
/// dimensions.
pub fn velocity_with(
    p: &Particle,
    global_best: &[f64],
    w: f64,
    params: &PsoParams,
    r1: f64,
    r2: f64,
    v_max: &[f64],
) -> Vec<f64> {
    (0..p.position.len())
        .map(|i| {
            let x = p.position[i];
            let v = w * p.velocity[i]
                + params.c1 * r1 * (p.personal_best_position[i] - x)
                + params.c2 * r2 * (global_best[i] - x);
            v.clamp(-v_max[i], v_max[i])
        })
        .collect()
}

/// [`velocity_with`] using fresh `r1`, `r2` draws (in that order).
pub fn update_velocity(
    p: &Particle,
    global_best: &[f64],
    w: f64,
    params: &PsoParams,
    v_max: &[f64],
    rng: &mut RngStream,
) -> Vec<f64> {
    let r1 = rng.uniform();
    let r2 = rng.uniform();
    velocity_with(p, global_best, w, params, r1, r2, v_max)
}

/// `x' = clamp(x + v')`.
pub fn update_position(position: &[f64], velocity: &[f64], bounds: &Bounds) -> Vec<f64> {
    let mut x: Vec<f64> = position.iter().zip(velocity).map(|(x, v)| x + v).collect();
    bounds.clamp_in_place(&mut x);
    x
}

pub fn v_max_for(bounds: &Bounds, params: &PsoParams) -> Vec<f64> {
    (0..bounds.dim())
        .map(|i| params.v_max_fraction * bounds.width(i))
        .collect()
}

#[derive(Debug, Clone)]
pub struct PsoState {
    particles: Vec<Particle>,
    global_best_position: Vec<f64>,
    global_best_fitness: f64,
    bounds: Bounds,
    params: PsoParams,
    v_max: Vec<f64>,
}

impl PsoState {
    /// Zero-velocity swarm at uniformly drawn positions, evaluated.
    pub fn init<P: Problem + ?Sized>(
        problem: &mut P,
        pop_size: usize,
        params: &PsoParams,
        rng: &mut RngStream,
    ) -> Result<Self> {
        params.validate(pop_size)?;
        let bounds = problem.bounds().clone();
        let dim = bounds.dim();
        let particles = uniform_init(&bounds, pop_size, rng)?
            .into_iter()
            .map(|c| Particle {
                personal_best_position: c.position.clone(),
                position: c.position,
                velocity: vec![0.0; dim],
                fitness: f64::NAN,
                personal_best_fitness: f64::INFINITY,
            })
            .collect();
        Self::from_particles(problem, particles, params)
    }

    /// Starts from caller-provided particles; they are evaluated here and
    /// their personal bests updated.
    pub fn from_particles<P: Problem + ?Sized>(
        problem: &mut P,
        particles: Vec<Particle>,
        params: &PsoParams,
    ) -> Result<Self> {
        params.validate(particles.len())?;
        let bounds = problem.bounds().clone();
        for p in &particles {
            bounds.check_dim(p.position.len())?;
            bounds.check_dim(p.velocity.len())?;
        }
        let mut state = PsoState {
            global_best_position: particles[0].position.clone(),
            global_best_fitness: f64::INFINITY,
            particles,
            v_max: v_max_for(&bounds, params),
            bounds,
            params: params.clone(),
        };
        state.evaluate_and_update_bests(problem);
        Ok(state)
    }

    fn evaluate_and_update_bests<P: Problem + ?Sized>(&mut self, problem: &mut P) {
        for p in &mut self.particles {
            p.fitness = problem.evaluate(&p.position);
            if p.fitness < p.personal_best_fitness {
                p.personal_best_fitness = p.fitness;
                p.personal_best_position.clone_from(&p.position);
            }
            if p.personal_best_fitness < self.global_best_fitness {
                self.global_best_fitness = p.personal_best_fitness;
                self.global_best_position.clone_from(&p.personal_best_position);
            }
        }
    }

    /// Moves every particle (index order) with the inertia for generation
    /// `gen` of `total`, then evaluates and refreshes the bests.
    pub fn step<P: Problem + ?Sized>(
        &mut self,
        problem: &mut P,
        gen: usize,
        total: usize,
        rng: &mut RngStream,
    ) {
        let w = inertia_at(gen, total, &self.params);
        for p in &mut self.particles {
            let v = update_velocity(p, &self.global_best_position, w, &self.params, &self.v_max, rng);
            p.position = update_position(&p.position, &v, &self.bounds);
            p.velocity = v;
        }
        self.evaluate_and_update_bests(problem);
    }

    pub fn particles(&self) -> &[Particle] {
        &self.particles
    }

    pub fn global_best(&self) -> (&[f64], f64) {
        (&self.global_best_position, self.global_best_fitness)
    }

    pub fn v_max(&self) -> &[f64] {
        &self.v_max
    }

    /// Best particle of the latest evaluation round.
    pub fn generation_best(&self) -> &Particle {
        let mut best = &self.particles[0];
        for p in &self.particles[1..] {
            if p.fitness < best.fitness {
                best = p;
            }
        }
        best
    }
}

pub fn pso_run<P: Problem + ?Sized>(
    problem: &mut P,
    pop_size: usize,
    generations: usize,
    params: &PsoParams,
    rng: &mut RngStream,
) -> Result<Trace> {
    params.validate(pop_size)?;
    let mut recorder = Recorder::new(problem, generations);
    let mut state = PsoState::init(problem, pop_size, params, rng)?;
    let best = state.generation_best();
    recorder.record(problem, best.fitness, &best.position);
    for gen in 1..=generations {
        state.step(problem, gen, generations, rng);
        let best = state.generation_best();
        recorder.record(problem, best.fitness, &best.position);
    }
    Ok(recorder.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::{make_objective, ObjectiveKind};

    fn particle_1d(x: f64, v: f64, pbest: f64) -> Particle {
        Particle {
            position: vec![x],
            velocity: vec![v],
            fitness: 0.0,
            personal_best_position: vec![pbest],
            personal_best_fitness: 0.0,
        }
    }

    #[test]
    fn velocity_by_substitution() {
        let params = PsoParams {
            c1: 2.0,
            c2: 2.0,
            ..PsoParams::default()
        };
        let p = particle_1d(1.0, 0.0, 0.0);
        let v = velocity_with(&p, &[0.0], 0.5, &params, 0.5, 0.5, &[10.0]);
        assert_eq!(v, vec![-2.0]);
    }

    #[test]
    fn converged_particle_stays_put() {
        let p = particle_1d(0.7, 0.0, 0.7);
        let v = velocity_with(&p, &[0.7], 0.9, &PsoParams::default(), 0.3, 0.8, &[3.0]);
        assert_eq!(v, vec![0.0]);
    }

    #[test]
    fn zero_weights_leave_pure_inertia() {
        let params = PsoParams {
            c1: 0.0,
            c2: 0.0,
            ..PsoParams::default()
        };
        let p = particle_1d(1.0, 0.8, -2.0);
        let v = velocity_with(&p, &[2.0], 0.5, &params, 0.9, 0.9, &[3.0]);
        assert_eq!(v, vec![0.4]);
    }

    #[test]
    fn velocity_is_clamped() {
        let p = particle_1d(3.0, 0.0, -3.0);
        let v = velocity_with(&p, &[-3.0], 0.9, &PsoParams::default(), 1.0, 1.0, &[3.0]);
        assert_eq!(v, vec![-3.0]);
    }

    #[test]
    fn position_update_cases() {
        let b = Bounds::uniform(2, -3.0, 3.0).unwrap();
        assert_eq!(update_position(&[1.0, 1.0], &[-2.0, 0.0], &b), vec![-1.0, 1.0]);
        assert_eq!(update_position(&[3.0, 0.0], &[0.5, 0.0], &b), vec![3.0, 0.0]);
        assert_eq!(update_position(&[0.25, -1.5], &[0.0, 0.0], &b), vec![0.25, -1.5]);
    }

    #[test]
    fn inertia_schedule_endpoints() {
        let p = PsoParams::default();
        assert_eq!(inertia_at(0, 100, &p), 0.9);
        assert!((inertia_at(100, 100, &p) - 0.4).abs() < 1e-15);
        assert!((inertia_at(50, 100, &p) - 0.65).abs() < 1e-15);
        assert_eq!(inertia_at(0, 0, &p), 0.9);
    }

    #[test]
    fn particle_on_optimum_stays_optimal() {
        let mut f = make_objective(ObjectiveKind::Rastrigin, 2, None).unwrap();
        let particle = Particle {
            position: vec![0.0, 0.0],
            velocity: vec![0.0, 0.0],
            fitness: f64::NAN,
            personal_best_position: vec![0.0, 0.0],
            personal_best_fitness: f64::INFINITY,
        };
        let params = PsoParams::default();
        let mut state = PsoState::from_particles(&mut f, vec![particle], &params).unwrap();
        let mut rng = RngStream::new(0);
        for g in 1..=20 {
            state.step(&mut f, g, 20, &mut rng);
            assert_eq!(state.global_best().1, 0.0);
            assert_eq!(state.particles()[0].position, vec![0.0, 0.0]);
        }
    }

    #[test]
    fn pure_inertia_decays_geometrically() {
        let mut f = make_objective(ObjectiveKind::Rastrigin, 3, None).unwrap();
        let params = PsoParams {
            c1: 0.0,
            c2: 0.0,
            w_min: 0.8,
            w_max: 0.8,
            v_max_fraction: 1.0,
        };
        let particles = vec![Particle {
            position: vec![0.0; 3],
            velocity: vec![0.01, -0.02, 0.005],
            fitness: f64::NAN,
            personal_best_position: vec![0.0; 3],
            personal_best_fitness: f64::INFINITY,
        }];
        let mut state = PsoState::from_particles(&mut f, particles, &params).unwrap();
        let mut rng = RngStream::new(1);
        let mut expected = [0.01f64, -0.02, 0.005];
        for g in 1..=100 {
            state.step(&mut f, g, 100, &mut rng);
            for (e, v) in expected.iter_mut().zip(&state.particles()[0].velocity) {
                *e *= 0.8;
                assert!((v - *e).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn rejects_invalid_params() {
        let mut f = make_objective(ObjectiveKind::Peaks, 2, None).unwrap();
        let mut rng = RngStream::new(0);
        let bad = PsoParams {
            w_min: 1.0,
            w_max: 0.5,
            ..PsoParams::default()
        };
        assert!(pso_run(&mut f, 5, 5, &bad, &mut rng).unwrap_err().is_config());
        let bad = PsoParams {
            v_max_fraction: 0.0,
            ..PsoParams::default()
        };
        assert!(pso_run(&mut f, 5, 5, &bad, &mut rng).is_err());
        assert!(pso_run(&mut f, 0, 5, &PsoParams::default(), &mut rng).is_err());
    }
}
