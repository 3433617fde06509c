//! Theoretical guarantees attached to algorithm outputs.

use serde::Serialize;

/// How a guarantee holds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Guarantee {
    /// On every input.
    PerInstance,
    /// In expectation over the algorithm's randomness.
    Expectation,
    /// With at least the given probability.
    Probability { probability: f64 },
}

/// A bound of the form `measured ≤ constant · baseline`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bound {
    /// Human-readable form of the constant.
    pub formula: String,
    pub constant: f64,
    /// `constant · baseline` (`constant · baseline²` when `squared`).
    pub value: f64,
    pub guarantee: Guarantee,
    /// The bound applies to the squared error.
    pub squared: bool,
    /// Extra factor allowed because the measured error is itself an estimate (`√2` for spectral Π).
    pub estimator_slack: f64,
}

impl Bound {
    pub fn new(formula: impl Into<String>, constant: f64, baseline: f64, guarantee: Guarantee) -> Self {
        Bound {
            formula: formula.into(),
            constant,
            value: constant * baseline,
            guarantee,
            squared: false,
            estimator_slack: 1.0,
        }
    }

    pub fn squared(formula: impl Into<String>, constant: f64, baseline: f64, guarantee: Guarantee) -> Self {
        Bound { squared: true, value: constant * baseline * baseline, ..Bound::new(formula, constant, 0.0, guarantee) }
    }

    pub fn with_slack(mut self, slack: f64) -> Self {
        self.estimator_slack = slack;
        self
    }

    /// Whether `measured` (already squared when the bound is) is within the bound and its slack.
    pub fn admits(&self, measured: f64) -> bool {
        measured <= self.value * self.estimator_slack * (1.0 + 1e-9) + 1e-12
    }
}
