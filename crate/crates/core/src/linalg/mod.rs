//! Dense linear algebra kernels shared by every module.

mod boost;
mod matrix;
mod plan;
mod subspace;
mod svd;

pub use boost::{boost_best, Boosted};
pub use matrix::*;
pub use plan::{Pick, SamplingPlan};
pub use subspace::{best_rank_k_in_subspace, residual_after_projection, SubspaceApprox};
pub use svd::{orth, pseudo_inverse, rank, rank_cutoff, singular_values, spectral_norm, svd, sym_eigen, SvdFactors};
