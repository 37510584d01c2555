//! Benchmark objectives and the evaluation interface the optimizers use.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::bounds::Bounds;
use crate::error::{Error, Result};

/// A bounded minimization problem with an evaluation counter.
pub trait Problem {
    fn bounds(&self) -> &Bounds;

    /// Objective value at `x`; increments the evaluation counter by one.
    fn evaluate(&mut self, x: &[f64]) -> f64;

    /// Evaluations performed so far.
    fn evaluations(&self) -> u64;

    fn dim(&self) -> usize {
        self.bounds().dim()
    }
}

/// Three-term peaks surface on `[-3, 3]^2`.
pub fn peaks(x: f64, y: f64) -> f64 {
    3.0 * (1.0 - x).powi(2) * (-x * x - (y + 1.0).powi(2)).exp()
        - 10.0 * (x / 5.0 - x.powi(3) - y.powi(5)) * (-x * x - y * y).exp()
        - (-(x + 1.0).powi(2) - y * y).exp() / 3.0
}

/// `10 n + sum(x_i^2 - 10 cos(2 pi x_i))`; zero only at the origin.
pub fn rastrigin(x: &[f64]) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::contract("rastrigin needs at least one coordinate"));
    }
    Ok(rastrigin_unchecked(x))
}

fn rastrigin_unchecked(x: &[f64]) -> f64 {
    10.0 * x.len() as f64
        + x.iter()
            .map(|v| v * v - 10.0 * (2.0 * PI * v).cos())
            .sum::<f64>()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ObjectiveKind {
    Peaks,
    Rastrigin,
}

impl ObjectiveKind {
    pub const ALL: [ObjectiveKind; 2] = [ObjectiveKind::Peaks, ObjectiveKind::Rastrigin];

    pub fn name(self) -> &'static str {
        match self {
            ObjectiveKind::Peaks => "peaks",
            ObjectiveKind::Rastrigin => "rastrigin",
        }
    }
}

impl fmt::Display for ObjectiveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ObjectiveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ObjectiveKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                Error::config(format!(
                    "unknown objective `{s}`; valid objectives: peaks, rastrigin"
                ))
            })
    }
}

/// A named benchmark function, optionally translated so that
/// `g(x) = f(x - shift)`.
#[derive(Debug, Clone)]
pub struct Objective {
    kind: ObjectiveKind,
    bounds: Bounds,
    shift: Vec<f64>,
    evals: u64,
    scratch: Vec<f64>,
}

impl Objective {
    pub fn kind(&self) -> ObjectiveKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    pub fn shift(&self) -> &[f64] {
        &self.shift
    }

    /// Evaluates without touching the counter.
    pub fn value(&self, x: &[f64]) -> f64 {
        let shifted: Vec<f64> = x.iter().zip(&self.shift).map(|(v, s)| v - s).collect();
        self.raw(&shifted)
    }

    fn raw(&self, x: &[f64]) -> f64 {
        match self.kind {
            ObjectiveKind::Peaks => peaks(x[0], x[1]),
            ObjectiveKind::Rastrigin => rastrigin_unchecked(x),
        }
    }

    /// A fresh copy with the evaluation counter reset.
    pub fn fresh(&self) -> Self {
        Objective {
            evals: 0,
            ..self.clone()
        }
    }
}

impl Problem for Objective {
    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate(&mut self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.bounds.dim(), "objective dimension mismatch");
        self.evals += 1;
        let mut scratch = std::mem::take(&mut self.scratch);
        scratch.clear();
        scratch.extend(x.iter().zip(&self.shift).map(|(v, s)| v - s));
        let value = self.raw(&scratch);
        self.scratch = scratch;
        value
    }

    fn evaluations(&self) -> u64 {
        self.evals
    }
}

/// Builds a benchmark objective on the `[-3, 3]^dim` box.
///
/// `peaks` is two-dimensional only. A `None` shift means no translation; a
/// given shift must lie inside the box so the shifted optimum stays feasible.
pub fn make_objective(kind: ObjectiveKind, dim: usize, shift: Option<Vec<f64>>) -> Result<Objective> {
    match kind {
        ObjectiveKind::Peaks if dim != 2 => {
            return Err(Error::config(format!("peaks is two-dimensional, got dim {dim}")));
        }
        _ if dim == 0 => return Err(Error::config("objective dimension must be at least 1")),
        _ => {}
    }
    let bounds = Bounds::uniform(dim, -3.0, 3.0)?;
    let shift = shift.unwrap_or_else(|| vec![0.0; dim]);
    if shift.len() != dim {
        return Err(Error::config(format!(
            "shift has {} components, objective has dim {dim}",
            shift.len()
        )));
    }
    if !bounds.contains(&shift) {
        return Err(Error::config(format!("shift {shift:?} lies outside the domain [-3, 3]")));
    }
    Ok(Objective {
        kind,
        bounds,
        shift,
        evals: 0,
        scratch: Vec::with_capacity(dim),
    })
}
