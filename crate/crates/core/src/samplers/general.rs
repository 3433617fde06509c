//! Barrier sampling for inputs that are not orthonormal.

use crate::error::{Error, Result};
use crate::linalg::{svd, Matrix, SamplingPlan};
use crate::samplers::barrier::{barrier_run, BarrierUpper};
use crate::WidthPolicy;

/// Second argument of [`barrier_dual_general`].
#[derive(Debug, Clone, Copy)]
pub enum GeneralTarget<'a> {
    /// `Y` is n×ℓ; bounds `‖YᵀΩS‖₂ ≤ (1 + √(ρ_Y/r))·‖Yᵀ‖₂`.
    Spectral(&'a Matrix),
    /// `Y` is ℓ×n; bounds `‖YΩS‖_F ≤ ‖Y‖_F`.
    Frobenius(&'a Matrix),
}

/// Barrier sampling on the left singular vectors of `X` (n×k, rank ρ_X < r ≤ n).
///
/// Guarantees `‖(XᵀΩS)⁺‖₂ · (1 − √(ρ_X/r)) ≤ ‖(Xᵀ)⁺‖₂` together with the target bound.
pub fn barrier_dual_general(x: &Matrix, target: GeneralTarget<'_>, r: usize) -> Result<SamplingPlan> {
    let fx = svd(x)?;
    if fx.rank == 0 {
        return Err(Error::Rank("X is zero".into()));
    }
    if r <= fx.rank {
        return Err(Error::arg(format!("need r > rank(X) = {}, got r = {r}", fx.rank)));
    }
    let run = match target {
        GeneralTarget::Spectral(y) => {
            if y.nrows() != x.nrows() {
                return Err(Error::dim(format!("Y has {} rows but X has {}", y.nrows(), x.nrows())));
            }
            let fy = svd(y)?;
            if fy.rank == 0 {
                barrier_run(&fx.u, BarrierUpper::Frobenius(&Matrix::zeros(1, x.nrows())), r, WidthPolicy::Strict)?
            } else {
                barrier_run(&fx.u, BarrierUpper::Spectral(&fy.u), r, WidthPolicy::Strict)?
            }
        }
        GeneralTarget::Frobenius(y) => barrier_run(&fx.u, BarrierUpper::Frobenius(y), r, WidthPolicy::Strict)?,
    };
    Ok(run.plan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{orth, pseudo_inverse, spectral_norm};
    use crate::samplers::barrier::{barrier_dual_frobenius, barrier_dual_spectral};
    use crate::sketch::gaussian_matrix;

    #[test]
    fn orthonormal_input_matches_direct_routine() {
        let v = orth(&gaussian_matrix(30, 3, 1)).unwrap();
        let u = orth(&gaussian_matrix(30, 4, 2)).unwrap();
        let direct = barrier_dual_spectral(&v, &u, 10).unwrap();
        let general = barrier_dual_general(&v, GeneralTarget::Spectral(&u), 10).unwrap();
        assert_eq!(direct.indices(), general.indices());

        let a = gaussian_matrix(4, 30, 3);
        let direct = barrier_dual_frobenius(&v, &a, 10).unwrap();
        let general = barrier_dual_general(&v, GeneralTarget::Frobenius(&a), 10).unwrap();
        assert_eq!(direct.indices(), general.indices());
    }

    #[test]
    fn rank_three_bound() {
        let x = gaussian_matrix(60, 3, 4) * gaussian_matrix(3, 5, 5);
        let y = gaussian_matrix(60, 4, 6);
        let r = 12;
        let plan = barrier_dual_general(&x, GeneralTarget::Spectral(&y), r).unwrap();
        let xt = x.transpose();
        let lhs = spectral_norm(&pseudo_inverse(&plan.apply_columns(&xt).unwrap()).unwrap()).unwrap();
        let rhs = spectral_norm(&pseudo_inverse(&xt).unwrap()).unwrap();
        assert!(lhs * (1.0 - (3.0f64 / r as f64).sqrt()) <= rhs * (1.0 + 1e-9));
        let yt = y.transpose();
        let top = spectral_norm(&plan.apply_columns(&yt).unwrap()).unwrap();
        assert!(top <= (1.0 + (4.0f64 / r as f64).sqrt()) * spectral_norm(&yt).unwrap() * (1.0 + 1e-9));
    }
}
