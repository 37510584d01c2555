use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::objective::Problem;
use crate::rng::RngStream;

/// A point in the search box with its cached objective value.
///
/// Freshly built candidates carry a NaN fitness until [`Candidate::evaluate`]
/// is called.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub position: Vec<f64>,
    pub fitness: f64,
}

impl Candidate {
    pub fn unevaluated(position: Vec<f64>) -> Self {
        Candidate {
            position,
            fitness: f64::NAN,
        }
    }

    pub fn evaluated(position: Vec<f64>, fitness: f64) -> Self {
        Candidate { position, fitness }
    }

    pub fn is_evaluated(&self) -> bool {
        !self.fitness.is_nan()
    }

    pub fn evaluate<P: Problem + ?Sized>(&mut self, problem: &mut P) -> f64 {
        self.fitness = problem.evaluate(&self.position);
        self.fitness
    }
}

/// Draws `n` positions uniformly from the box: `lower + u * (upper - lower)`.
pub fn uniform_init(bounds: &Bounds, n: usize, rng: &mut RngStream) -> Result<Vec<Candidate>> {
    if n == 0 {
        return Err(Error::config("population size must be at least 1"));
    }
    Ok((0..n)
        .map(|_| Candidate::unevaluated(uniform_point(bounds, rng)))
        .collect())
}

pub(crate) fn uniform_point(bounds: &Bounds, rng: &mut RngStream) -> Vec<f64> {
    (0..bounds.dim())
        .map(|i| uniform_gene(bounds, i, rng))
        .collect()
}

pub(crate) fn uniform_gene(bounds: &Bounds, i: usize, rng: &mut RngStream) -> f64 {
    let lo = bounds.lower()[i];
    // u < 1 but rounding may still land on `upper`; min keeps it closed.
    (lo + rng.uniform() * bounds.width(i)).min(bounds.upper()[i])
}

/// Index of the lowest fitness; ties resolve to the lower index.
pub(crate) fn argmin(pop: &[Candidate]) -> usize {
    let mut best = 0;
    for (i, c) in pop.iter().enumerate().skip(1) {
        if c.fitness < pop[best].fitness {
            best = i;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square_points_are_contained() {
        let b = Bounds::uniform(2, 0.0, 1.0).unwrap();
        let pop = uniform_init(&b, 3, &mut RngStream::new(9)).unwrap();
        assert_eq!(pop.len(), 3);
        assert!(pop.iter().all(|c| b.contains(&c.position)));
        assert!(pop.iter().all(|c| !c.is_evaluated()));
    }

    #[test]
    fn paper_domain_points_are_contained() {
        let b = Bounds::uniform(2, -3.0, 3.0).unwrap();
        for seed in 0..20 {
            let pop = uniform_init(&b, 10, &mut RngStream::new(seed)).unwrap();
            for c in &pop {
                assert!(c.position.iter().all(|v| (-3.0..=3.0).contains(v)));
            }
        }
    }

    #[test]
    fn single_candidate_and_empty_request() {
        let b = Bounds::uniform(3, -1.0, 1.0).unwrap();
        let pop = uniform_init(&b, 1, &mut RngStream::new(0)).unwrap();
        assert_eq!(pop.len(), 1);
        assert_eq!(pop[0].position.len(), 3);
        assert!(uniform_init(&b, 0, &mut RngStream::new(0)).unwrap_err().is_config());
    }

    #[test]
    fn argmin_prefers_lower_index_on_ties() {
        let pop = vec![
            Candidate::evaluated(vec![0.0], 2.0),
            Candidate::evaluated(vec![1.0], 1.0),
            Candidate::evaluated(vec![2.0], 1.0),
        ];
        assert_eq!(argmin(&pop), 1);
    }
}
