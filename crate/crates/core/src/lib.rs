//! Column and row sampling for low-rank approximation, regression coresets and
//! k-means feature selection, with fast approximate SVDs and brute-force oracles
//! for checking the guarantees on small inputs.

pub mod approx_svd;
pub mod bounds;
pub mod cli;
pub mod config;
pub mod cx;
pub mod error;
pub mod io;
pub mod kmeans;
pub mod linalg;
pub mod oracles;
pub mod regression;
pub mod report;
pub mod rng;
pub mod samplers;
pub mod sketch;
pub mod synthetic;

pub use error::{Error, Result};
pub use linalg::{Matrix, SamplingPlan, Vector};

/// Whether an operation may produce more samples than its input has rows or columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WidthPolicy {
    /// Reject such requests.
    #[default]
    Strict,
    /// Allow them; sampling then repeats indices or, for barrier methods, concentrates weight.
    AllowWider,
}
