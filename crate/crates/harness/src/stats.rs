//! Summary statistics over seeded repeats.

use metabench_core::{Algorithm, Trace};

/// Summary of one sample. `std` is the population standard deviation, so a
/// single repeat has `std == 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub median: f64,
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

impl Summary {
    /// Panics on an empty sample.
    pub fn of(values: &[f64]) -> Self {
        assert!(!values.is_empty(), "summary of an empty sample");
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len();
        let median = if n % 2 == 1 {
            sorted[n / 2]
        } else {
            0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
        };
        let mean = sorted.iter().sum::<f64>() / n as f64;
        let var = sorted.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n as f64;
        Summary {
            median,
            mean,
            std: var.sqrt(),
            min: sorted[0],
            max: sorted[n - 1],
        }
    }
}

pub fn median(values: &[f64]) -> f64 {
    Summary::of(values).median
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmAggregate {
    pub algorithm: Algorithm,
    /// Best-so-far statistics per generation.
    pub per_generation: Vec<Summary>,
    /// Cumulative evaluations per generation (identical across repeats).
    pub evaluations: Vec<u64>,
}

impl AlgorithmAggregate {
    pub fn from_traces(algorithm: Algorithm, traces: &[Trace]) -> Self {
        let generations = traces[0].entries.len();
        let per_generation = (0..generations)
            .map(|g| {
                let column: Vec<f64> = traces.iter().map(|t| t.entries[g].best_so_far).collect();
                Summary::of(&column)
            })
            .collect();
        AlgorithmAggregate {
            algorithm,
            per_generation,
            evaluations: traces[0].entries.iter().map(|e| e.evaluations).collect(),
        }
    }

    pub fn final_best(&self) -> &Summary {
        self.per_generation.last().expect("aggregate without generations")
    }

    pub fn medians(&self) -> Vec<f64> {
        self.per_generation.iter().map(|s| s.median).collect()
    }
}

/// Per-generation statistics for every algorithm of one experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateReport {
    pub algorithms: Vec<AlgorithmAggregate>,
}

impl AggregateReport {
    pub fn get(&self, algorithm: Algorithm) -> Option<&AlgorithmAggregate> {
        self.algorithms.iter().find(|a| a.algorithm == algorithm)
    }

    pub fn generations(&self) -> usize {
        self.algorithms.first().map_or(0, |a| a.per_generation.len())
    }

    /// True when every algorithm spent the same cumulative number of
    /// evaluations at every generation.
    pub fn budget_parity(&self) -> bool {
        self.algorithms
            .windows(2)
            .all(|w| w[0].evaluations == w[1].evaluations)
    }

    /// `(max - min) / |median|` of the algorithms' median best-so-far at
    /// generation `g`.
    pub fn relative_spread(&self, g: usize) -> f64 {
        let medians: Vec<f64> = self.algorithms.iter().map(|a| a.per_generation[g].median).collect();
        let s = Summary::of(&medians);
        (s.max - s.min) / s.median.abs()
    }
}
