use crate::objective::Problem;

/// One row of a convergence trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceEntry {
    pub generation: usize,
    pub best_so_far: f64,
    pub gen_best: f64,
    /// Cumulative objective evaluations of this run, including generation 0.
    pub evaluations: u64,
}

/// Per-generation convergence record of a single run.
///
/// Entry 0 is the evaluated initial population.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub entries: Vec<TraceEntry>,
    pub final_best_position: Vec<f64>,
}

impl Trace {
    pub fn final_best(&self) -> f64 {
        self.entries
            .last()
            .map(|e| e.best_so_far)
            .unwrap_or(f64::INFINITY)
    }

    pub fn total_evaluations(&self) -> u64 {
        self.entries.last().map(|e| e.evaluations).unwrap_or(0)
    }

    pub fn best_so_far(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.iter().map(|e| e.best_so_far)
    }

    /// First generation whose best-so-far is at or below `threshold`.
    pub fn first_generation_below(&self, threshold: f64) -> Option<usize> {
        self.entries
            .iter()
            .find(|e| e.best_so_far <= threshold)
            .map(|e| e.generation)
    }
}

/// Builds a [`Trace`] while an optimizer runs, tracking best-so-far outside
/// the population so it stays monotone whatever the algorithm does.
pub(crate) struct Recorder {
    start_evals: u64,
    entries: Vec<TraceEntry>,
    best_fitness: f64,
    best_position: Vec<f64>,
}

impl Recorder {
    pub(crate) fn new<P: Problem + ?Sized>(problem: &P, generations: usize) -> Self {
        Recorder {
            start_evals: problem.evaluations(),
            entries: Vec::with_capacity(generations + 1),
            best_fitness: f64::INFINITY,
            best_position: Vec::new(),
        }
    }

    /// Closes the current generation given its best evaluated point.
    pub(crate) fn record<P: Problem + ?Sized>(
        &mut self,
        problem: &P,
        gen_best: f64,
        gen_best_position: &[f64],
    ) {
        if gen_best < self.best_fitness || self.best_position.is_empty() {
            self.best_fitness = gen_best;
            self.best_position = gen_best_position.to_vec();
        }
        self.entries.push(TraceEntry {
            generation: self.entries.len(),
            best_so_far: self.best_fitness,
            gen_best,
            evaluations: problem.evaluations() - self.start_evals,
        });
    }

    pub(crate) fn finish(self) -> Trace {
        Trace {
            entries: self.entries,
            final_best_position: self.best_position,
        }
    }
}
