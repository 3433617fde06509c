//! Repeat a randomized procedure and keep the best run.

use crate::error::{Error, Result};
use crate::rng::derive_seed;

/// Outcome of [`boost_best`].
#[derive(Debug, Clone)]
pub struct Boosted<T> {
    pub best: T,
    pub score: f64,
    /// Index of the winning trial.
    pub trial: usize,
    /// Seed the winning trial ran with.
    pub seed: u64,
}

/// Run `run(seed_t)` for `trials` derived seeds and return the run with the smallest score.
///
/// Trial `t` uses `derive_seed(base_seed, t)`. Ties go to the lowest trial index.
pub fn boost_best<T>(
    base_seed: u64,
    trials: usize,
    mut run: impl FnMut(u64) -> Result<T>,
    score: impl Fn(&T) -> f64,
) -> Result<Boosted<T>> {
    if trials == 0 {
        return Err(Error::arg("trials must be at least 1"));
    }
    let mut best: Option<Boosted<T>> = None;
    for t in 0..trials {
        let seed = derive_seed(base_seed, t as u64);
        let out = run(seed)?;
        let s = score(&out);
        if best.as_ref().is_none_or(|b| s < b.score) {
            best = Some(Boosted { best: out, score: s, trial: t, seed });
        }
    }
    Ok(best.expect("at least one trial"))
}
