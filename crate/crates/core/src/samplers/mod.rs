//! Column samplers: randomized, rank-revealing and barrier-based.

mod barrier;
mod general;
mod random;
mod rrqr;

pub use barrier::{
    barrier_dual_frobenius, barrier_dual_identity, barrier_dual_spectral, barrier_run, barrier_single, BarrierRun,
    BarrierState, BarrierTrace, BarrierUpper,
};
pub use general::{barrier_dual_general, GeneralTarget};
pub use random::{
    adaptive_sampling, additive_sampling, leverage_scores, subspace_probabilities, subspace_sampling, AdaptiveSample,
};
pub use rrqr::{rrqr_bound, rrqr_select};
