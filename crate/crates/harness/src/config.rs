//! JSON experiment configuration.
//!
//! ```json
//! {
//!   "objective": { "name": "rastrigin", "dim": 10, "shift": [1.5, 1.5, ...] },
//!   "algorithms": ["ga", { "id": "pso", "params": { "c1": 1.5 } }],
//!   "pop_size": 50,
//!   "generations": 300,
//!   "repeats": 10,
//!   "base_seed": 2020,
//!   "output_dir": "out/rastrigin"
//! }
//! ```
//!
//! `algorithms` defaults to all five, `repeats` to 10 and `base_seed` to 0.
//! `dim` defaults to 2 for peaks and 10 for rastrigin; `shift` to zeros.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use metabench_core::{make_objective, Algorithm, AlgorithmParams, Objective, ObjectiveKind};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectiveSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<Vec<f64>>,
}

impl ObjectiveSpec {
    pub fn kind(&self) -> Result<ObjectiveKind> {
        Ok(self.name.parse()?)
    }

    pub fn dim(&self) -> Result<usize> {
        Ok(match (self.dim, self.kind()?) {
            (Some(d), _) => d,
            (None, ObjectiveKind::Peaks) => 2,
            (None, ObjectiveKind::Rastrigin) => 10,
        })
    }

    pub fn build(&self) -> Result<Objective> {
        Ok(make_objective(self.kind()?, self.dim()?, self.shift.clone())?)
    }
}

/// `"pso"` or `{ "id": "pso", "params": { ... } }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgorithmEntry {
    Id(String),
    WithParams {
        id: String,
        #[serde(default)]
        params: BTreeMap<String, serde_json::Value>,
    },
}

impl AlgorithmEntry {
    pub fn id(&self) -> &str {
        match self {
            AlgorithmEntry::Id(id) | AlgorithmEntry::WithParams { id, .. } => id,
        }
    }

    /// Defaults for the algorithm with this entry's overrides applied.
    pub fn resolve(&self) -> Result<AlgorithmParams> {
        let algorithm: Algorithm = self.id().parse()?;
        let mut params = algorithm.default_params();
        if let AlgorithmEntry::WithParams { params: overrides, .. } = self {
            for (key, value) in overrides {
                let text = match value {
                    serde_json::Value::String(s) => s.clone(),
                    serde_json::Value::Number(n) => n.to_string(),
                    other => {
                        return Err(HarnessError::Config(format!(
                            "parameter `{key}` of {algorithm} must be a number or string, got {other}"
                        )))
                    }
                };
                params.set(key, &text)?;
            }
        }
        Ok(params)
    }
}

fn default_algorithms() -> Vec<AlgorithmEntry> {
    Algorithm::ALL
        .iter()
        .map(|a| AlgorithmEntry::Id(a.id().to_string()))
        .collect()
}

fn default_repeats() -> usize {
    10
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub objective: ObjectiveSpec,
    #[serde(default = "default_algorithms")]
    pub algorithms: Vec<AlgorithmEntry>,
    pub pop_size: usize,
    pub generations: usize,
    #[serde(default = "default_repeats")]
    pub repeats: usize,
    #[serde(default)]
    pub base_seed: u64,
    pub output_dir: PathBuf,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| HarnessError::Config(format!("invalid experiment config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        Self::from_json(&text)
    }

    /// Every listed algorithm with its complete parameter set, after
    /// checking the budget fields and building the objective once.
    pub fn resolve(&self) -> Result<Vec<AlgorithmParams>> {
        if self.repeats == 0 {
            return Err(HarnessError::Config("repeats must be at least 1".into()));
        }
        if self.pop_size == 0 {
            return Err(HarnessError::Config("pop_size must be at least 1".into()));
        }
        if self.algorithms.is_empty() {
            return Err(HarnessError::Config("no algorithms configured".into()));
        }
        self.objective.build()?;
        let mut seen = Vec::new();
        let mut out = Vec::with_capacity(self.algorithms.len());
        for entry in &self.algorithms {
            let params = entry.resolve()?;
            let alg = params.algorithm();
            if seen.contains(&alg) {
                return Err(HarnessError::Config(format!("algorithm {alg} listed twice")));
            }
            seen.push(alg);
            params.validate(self.pop_size)?;
            out.push(params);
        }
        Ok(out)
    }

    /// The same experiment over all five algorithms, keeping any overrides
    /// already present for an algorithm.
    pub fn with_all_algorithms(&self) -> Self {
        let algorithms = Algorithm::ALL
            .iter()
            .map(|a| {
                self.algorithms
                    .iter()
                    .find(|e| e.id() == a.id())
                    .cloned()
                    .unwrap_or_else(|| AlgorithmEntry::Id(a.id().to_string()))
            })
            .collect();
        ExperimentConfig {
            algorithms,
            ..self.clone()
        }
    }
}
