use std::fmt;
use std::str::FromStr;

use crate::algo::de::DeParams;
use crate::algo::ga::GaParams;
use crate::algo::gwo::GwoParams;
use crate::algo::pso::PsoParams;
use crate::algo::sa::SaParams;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Ga,
    Pso,
    Gwo,
    De,
    Sa,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [Algorithm::Ga, Algorithm::Pso, Algorithm::Gwo, Algorithm::De, Algorithm::Sa];

    pub fn id(self) -> &'static str {
        match self {
            Algorithm::Ga => "ga",
            Algorithm::Pso => "pso",
            Algorithm::Gwo => "gwo",
            Algorithm::De => "de",
            Algorithm::Sa => "sa",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Algorithm::Ga => "genetic algorithm",
            Algorithm::Pso => "particle swarm optimization",
            Algorithm::Gwo => "grey wolf optimizer",
            Algorithm::De => "differential evolution",
            Algorithm::Sa => "simulated annealing",
        }
    }

    pub fn min_pop_size(self) -> usize {
        match self {
            Algorithm::Ga => 2,
            Algorithm::Pso | Algorithm::Sa => 1,
            Algorithm::Gwo => 3,
            Algorithm::De => 4,
        }
    }

    pub fn default_params(self) -> AlgorithmParams {
        match self {
            Algorithm::Ga => AlgorithmParams::Ga(GaParams::default()),
            Algorithm::Pso => AlgorithmParams::Pso(PsoParams::default()),
            Algorithm::Gwo => AlgorithmParams::Gwo(GwoParams::default()),
            Algorithm::De => AlgorithmParams::De(DeParams::default()),
            Algorithm::Sa => AlgorithmParams::Sa(SaParams::default()),
        }
    }

    /// Parameter names accepted by [`AlgorithmParams::set`], in listing order.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Algorithm::Ga => &["tournament_size", "crossover_prob", "mutation_prob"],
            Algorithm::Pso => &["c1", "c2", "w_min", "w_max", "v_max_fraction"],
            Algorithm::Gwo => &["a_initial", "a_final"],
            Algorithm::De => &["f_weight", "cr"],
            Algorithm::Sa => &["t_initial", "alpha", "neighbors_per_gen", "step_fraction"],
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.id() == s)
            .ok_or_else(|| Error::config(format!("unknown algorithm `{s}`; valid ids: ga, pso, gwo, de, sa")))
    }
}

/// Parameter record of one algorithm.
#[derive(Debug, Clone, PartialEq)]
pub enum AlgorithmParams {
    Ga(GaParams),
    Pso(PsoParams),
    Gwo(GwoParams),
    De(DeParams),
    Sa(SaParams),
}

fn parse_f64(key: &str, value: &str) -> Result<f64> {
    value
        .trim()
        .parse::<f64>()
        .map_err(|_| Error::config(format!("parameter `{key}` expects a number, got `{value}`")))
}

fn parse_usize(key: &str, value: &str) -> Result<usize> {
    value
        .trim()
        .parse::<usize>()
        .map_err(|_| Error::config(format!("parameter `{key}` expects a non-negative integer, got `{value}`")))
}

fn fmt_opt(v: Option<f64>, none: &str) -> String {
    v.map_or_else(|| none.to_string(), |x| x.to_string())
}

impl AlgorithmParams {
    pub fn algorithm(&self) -> Algorithm {
        match self {
            AlgorithmParams::Ga(_) => Algorithm::Ga,
            AlgorithmParams::Pso(_) => Algorithm::Pso,
            AlgorithmParams::Gwo(_) => Algorithm::Gwo,
            AlgorithmParams::De(_) => Algorithm::De,
            AlgorithmParams::Sa(_) => Algorithm::Sa,
        }
    }

    /// Overrides one parameter from its textual value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let unknown = |alg: Algorithm| {
            Error::config(format!(
                "unknown parameter `{key}` for {alg}; valid parameters: {}",
                alg.param_names().join(", ")
            ))
        };
        let alg = self.algorithm();
        match self {
            AlgorithmParams::Ga(p) => match key {
                "tournament_size" => p.tournament_size = parse_usize(key, value)?,
                "crossover_prob" => p.crossover_prob = parse_f64(key, value)?,
                "mutation_prob" => {
                    p.mutation_prob = match value.trim() {
                        "auto" => None,
                        v => Some(parse_f64(key, v)?),
                    }
                }
                _ => return Err(unknown(alg)),
            },
            AlgorithmParams::Pso(p) => match key {
                "c1" => p.c1 = parse_f64(key, value)?,
                "c2" => p.c2 = parse_f64(key, value)?,
                "w_min" => p.w_min = parse_f64(key, value)?,
                "w_max" => p.w_max = parse_f64(key, value)?,
                "v_max_fraction" => p.v_max_fraction = parse_f64(key, value)?,
                _ => return Err(unknown(alg)),
            },
            AlgorithmParams::Gwo(p) => match key {
                "a_initial" => p.a_initial = parse_f64(key, value)?,
                "a_final" => p.a_final = parse_f64(key, value)?,
                _ => return Err(unknown(alg)),
            },
            AlgorithmParams::De(p) => match key {
                "f_weight" => p.f_weight = parse_f64(key, value)?,
                "cr" => p.cr = parse_f64(key, value)?,
                _ => return Err(unknown(alg)),
            },
            AlgorithmParams::Sa(p) => match key {
                "t_initial" => {
                    p.t_initial = match value.trim() {
                        "auto" => None,
                        v => Some(parse_f64(key, v)?),
                    }
                }
                "alpha" => p.alpha = parse_f64(key, value)?,
                "neighbors_per_gen" => p.neighbors_per_gen = Some(parse_usize(key, value)?),
                "step_fraction" => p.step_fraction = parse_f64(key, value)?,
                _ => return Err(unknown(alg)),
            },
        }
        Ok(())
    }

    /// Fills size-dependent defaults (`mutation_prob`, `neighbors_per_gen`).
    /// `t_initial` stays `auto` since it depends on sampled objective values.
    pub fn resolved(&self, dim: usize, pop_size: usize) -> AlgorithmParams {
        let mut out = self.clone();
        match &mut out {
            AlgorithmParams::Ga(p) => p.mutation_prob = Some(p.mutation_prob_for(dim)),
            AlgorithmParams::Sa(p) => p.neighbors_per_gen = Some(p.neighbors_for(pop_size)),
            _ => {}
        }
        out
    }

    /// `(name, value)` pairs in [`Algorithm::param_names`] order.
    pub fn entries(&self) -> Vec<(&'static str, String)> {
        let names = self.algorithm().param_names();
        let values: Vec<String> = match self {
            AlgorithmParams::Ga(p) => vec![
                p.tournament_size.to_string(),
                p.crossover_prob.to_string(),
                fmt_opt(p.mutation_prob, "1/dim"),
            ],
            AlgorithmParams::Pso(p) => [p.c1, p.c2, p.w_min, p.w_max, p.v_max_fraction]
                .iter()
                .map(f64::to_string)
                .collect(),
            AlgorithmParams::Gwo(p) => vec![p.a_initial.to_string(), p.a_final.to_string()],
            AlgorithmParams::De(p) => vec![p.f_weight.to_string(), p.cr.to_string()],
            AlgorithmParams::Sa(p) => vec![
                fmt_opt(p.t_initial, "auto"),
                p.alpha.to_string(),
                p.neighbors_per_gen.map_or_else(|| "pop_size".to_string(), |m| m.to_string()),
                p.step_fraction.to_string(),
            ],
        };
        names.iter().copied().zip(values).collect()
    }

    pub fn validate(&self, pop_size: usize) -> Result<()> {
        match self {
            AlgorithmParams::Ga(p) => p.validate(pop_size),
            AlgorithmParams::Pso(p) => p.validate(pop_size),
            AlgorithmParams::Gwo(p) => p.validate(pop_size),
            AlgorithmParams::De(p) => p.validate(pop_size),
            AlgorithmParams::Sa(p) => p.validate(pop_size),
        }
    }
}

/// Budget and parameters of one seeded run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub pop_size: usize,
    pub generations: usize,
    pub seed: u64,
    pub params: AlgorithmParams,
}

impl RunConfig {
    /// Default parameters for `algorithm`.
    pub fn new(algorithm: Algorithm, pop_size: usize, generations: usize, seed: u64) -> Self {
        RunConfig {
            pop_size,
            generations,
            seed,
            params: algorithm.default_params(),
        }
    }

    pub fn with_params(mut self, params: AlgorithmParams) -> Self {
        self.params = params;
        self
    }

    pub fn algorithm(&self) -> Algorithm {
        self.params.algorithm()
    }

    pub fn validate(&self) -> Result<()> {
        let alg = self.algorithm();
        if self.pop_size < alg.min_pop_size() {
            return Err(Error::config(format!(
                "{alg} needs pop_size >= {}, got {}",
                alg.min_pop_size(),
                self.pop_size
            )));
        }
        self.params.validate(self.pop_size)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.id().parse::<Algorithm>().unwrap(), a);
            assert_eq!(a.default_params().algorithm(), a);
            assert_eq!(a.default_params().entries().len(), a.param_names().len());
        }
        let err = "cmaes".parse::<Algorithm>().unwrap_err();
        assert!(err.to_string().contains("ga, pso, gwo, de, sa"));
    }

    #[test]
    fn set_overrides_and_rejects_unknown_keys() {
        let mut p = Algorithm::Pso.default_params();
        p.set("c1", "1.5").unwrap();
        assert_eq!(p.entries()[0], ("c1", "1.5".to_string()));
        assert!(p.set("cr", "0.1").unwrap_err().to_string().contains("v_max_fraction"));
        assert!(p.set("c2", "fast").is_err());

        let mut sa = Algorithm::Sa.default_params();
        sa.set("t_initial", "12.5").unwrap();
        sa.set("t_initial", "auto").unwrap();
        assert_eq!(sa.entries()[0].1, "auto");
    }

    #[test]
    fn resolution_fills_size_dependent_defaults() {
        let ga = Algorithm::Ga.default_params().resolved(10, 50);
        assert_eq!(ga.entries()[2].1, "0.1");
        let sa = Algorithm::Sa.default_params().resolved(10, 50);
        assert_eq!(sa.entries()[2].1, "50");
    }

    #[test]
    fn population_minimums() {
        assert!(RunConfig::new(Algorithm::De, 3, 1, 0).validate().unwrap_err().is_config());
        assert!(RunConfig::new(Algorithm::De, 4, 1, 0).validate().is_ok());
        assert!(RunConfig::new(Algorithm::Ga, 1, 1, 0).validate().is_err());
        assert!(RunConfig::new(Algorithm::Gwo, 2, 1, 0).validate().is_err());
        assert!(RunConfig::new(Algorithm::Pso, 1, 1, 0).validate().is_ok());
    }
}
