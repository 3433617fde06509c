//! Best rank-k approximation of `A` inside the column space of `C`.

use super::matrix::Matrix;
use super::svd::{orth, svd};
use crate::error::{Error, Result};

/// Result of [`best_rank_k_in_subspace`].
#[derive(Debug, Clone)]
pub struct SubspaceApprox {
    /// `Q (QᵀA)_k`.
    pub approx: Matrix,
    /// Right singular vectors of `(QᵀA)_k`; fewer than k columns when `QᵀA` has lower rank.
    pub z: Matrix,
}

/// `Q (QᵀA)_k` with `Q` an orthonormal basis of `col(C)`.
///
/// The Frobenius error is the minimum of `‖A − CΨ‖_F` over rank-k `Ψ`; the spectral
/// error is within a factor `√2` of the spectral optimum.
pub fn best_rank_k_in_subspace(a: &Matrix, c: &Matrix, k: usize) -> Result<SubspaceApprox> {
    if k == 0 {
        return Err(Error::arg("k must be positive"));
    }
    if c.nrows() != a.nrows() {
        return Err(Error::dim(format!(
            "C has {} rows but A has {}",
            c.nrows(),
            a.nrows()
        )));
    }
    if k > c.ncols() {
        return Err(Error::arg(format!("k = {k} exceeds the {} columns of C", c.ncols())));
    }
    let q = orth(c)?;
    let b = q.transpose() * a;
    let f = svd(&b)?;
    let kk = k.min(f.rank);
    Ok(SubspaceApprox {
        approx: &q * f.truncated(kk),
        z: f.v.columns(0, kk).into_owned(),
    })
}

/// `A − CC⁺A`, computed through an orthonormal basis of `col(C)`.
pub fn residual_after_projection(a: &Matrix, c: &Matrix) -> Result<Matrix> {
    if c.ncols() == 0 {
        return Ok(a.clone());
    }
    let q = orth(c)?;
    Ok(a - &q * (q.transpose() * a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::svd::spectral_norm;
    use crate::rng::{stream, Normals, StreamKind};

    fn gaussian(m: usize, n: usize, seed: u64) -> Matrix {
        let mut g = Normals::new(stream(seed, StreamKind::Synthetic, 0));
        Matrix::from_fn(m, n, |_, _| g.next())
    }

    #[test]
    fn full_subspace_recovers_a() {
        let a = gaussian(5, 3, 1);
        let out = best_rank_k_in_subspace(&a, &a, 3).unwrap();
        assert!((out.approx - &a).norm() < 1e-12);
        assert!(crate::linalg::matrix::orthonormality_defect(&out.z) < 1e-12);
    }

    #[test]
    fn rank_two_exact() {
        let a = gaussian(6, 2, 2) * gaussian(2, 7, 3);
        let c = &a * gaussian(7, 3, 4);
        let out = best_rank_k_in_subspace(&a, &c, 2).unwrap();
        assert!((out.approx - &a).norm() < 1e-10 * a.norm());
    }

    #[test]
    fn dominates_random_rank_k_candidates() {
        let a = gaussian(8, 8, 5);
        let c = gaussian(8, 4, 6);
        let best = best_rank_k_in_subspace(&a, &c, 2).unwrap();
        let best_err = (&a - &best.approx).norm();
        for t in 0..1000 {
            let psi = gaussian(4, 2, 100 + t) * gaussian(2, 8, 5000 + t);
            // Least-squares-scale the candidate so the comparison is not trivially loose.
            let cand = &c * &psi;
            let scale = cand.dot(&a) / cand.norm_squared();
            let err = (&a - cand * scale).norm();
            assert!(best_err <= err + 1e-12);
        }
        let spec = spectral_norm(&(&a - &best.approx)).unwrap();
        assert!(spec.is_finite());
    }

    #[test]
    fn rejects_bad_k() {
        let a = gaussian(4, 4, 7);
        assert!(best_rank_k_in_subspace(&a, &a, 0).is_err());
        assert!(best_rank_k_in_subspace(&a, &a.columns(0, 2).into_owned(), 3).is_err());
    }
}
