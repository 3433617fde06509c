//! Thin SVD with a numerical rank cutoff, pseudo-inverse and related kernels.

use nalgebra::SymmetricEigen;

use super::matrix::{ensure_finite, Matrix};
use crate::config::RANK_EPS;
use crate::error::{Error, Result};

const SVD_MAX_ITER: usize = 10_000;

/// Thin SVD truncated to the numerical rank.
#[derive(Debug, Clone)]
pub struct SvdFactors {
    /// m×ρ, orthonormal columns.
    pub u: Matrix,
    /// Descending, all above the rank cutoff.
    pub singular_values: Vec<f64>,
    /// n×ρ, orthonormal columns.
    pub v: Matrix,
    pub rank: usize,
}

impl SvdFactors {
    /// `U Σ Vᵀ`.
    pub fn reconstruct(&self) -> Matrix {
        let mut us = self.u.clone();
        for (j, s) in self.singular_values.iter().enumerate() {
            us.column_mut(j).scale_mut(*s);
        }
        us * self.v.transpose()
    }

    /// Best rank-`k` approximation `U_k Σ_k V_kᵀ` (all of it when `k ≥ ρ`).
    pub fn truncated(&self, k: usize) -> Matrix {
        let k = k.min(self.rank);
        let mut us = self.u.columns(0, k).into_owned();
        for j in 0..k {
            us.column_mut(j).scale_mut(self.singular_values[j]);
        }
        us * self.v.columns(0, k).transpose()
    }

    /// `σ_i`, or zero past the rank.
    pub fn sigma(&self, i: usize) -> f64 {
        self.singular_values.get(i).copied().unwrap_or(0.0)
    }

    /// `‖A − A_k‖_F` computed from the discarded singular values.
    pub fn tail_frobenius(&self, k: usize) -> f64 {
        self.singular_values.iter().skip(k).map(|s| s * s).sum::<f64>().sqrt()
    }
}

/// Keep `σ_i > σ_1 · max(m, n) · 2.2e-16`.
pub fn rank_cutoff(sigma_max: f64, rows: usize, cols: usize) -> f64 {
    sigma_max * rows.max(cols) as f64 * RANK_EPS
}

type RawSvd = nalgebra::SVD<f64, nalgebra::Dyn, nalgebra::Dyn>;

fn recompose_error(f: &RawSvd, a: &Matrix) -> f64 {
    let (Some(u), Some(v_t)) = (&f.u, &f.v_t) else { return 0.0 };
    let mut us = u.clone();
    for (j, s) in f.singular_values.iter().enumerate() {
        us.column_mut(j).scale_mut(*s);
    }
    (us * v_t - a).norm()
}

/// nalgebra's implicit-shift SVD, checked by recomposition. On some rank-deficient inputs
/// that iteration stops on a wrong factorization; those fall back to one-sided Jacobi.
fn raw_svd(a: &Matrix) -> Result<RawSvd> {
    ensure_finite(a, "SVD input")?;
    let limit = 1e-12 * a.norm() * (a.nrows().max(a.ncols()) as f64).sqrt();
    if let Some(f) = a.clone().try_svd(true, true, 5.0 * f64::EPSILON, SVD_MAX_ITER) {
        if recompose_error(&f, a) <= limit {
            return Ok(f);
        }
    }
    let f = if a.nrows() >= a.ncols() {
        jacobi_svd(a)?
    } else {
        let t = jacobi_svd(&a.transpose())?;
        RawSvd { u: t.v_t.map(|v| v.transpose()), v_t: t.u.map(|u| u.transpose()), singular_values: t.singular_values }
    };
    let err = recompose_error(&f, a);
    if err > limit {
        return Err(Error::Numeric(format!(
            "SVD of a {}x{} matrix is inaccurate (residual {err:e})",
            a.nrows(),
            a.ncols()
        )));
    }
    Ok(f)
}

/// One-sided Jacobi SVD of a tall matrix (m ≥ n); singular values descending.
fn jacobi_svd(a: &Matrix) -> Result<RawSvd> {
    let (m, n) = a.shape();
    let mut u = a.clone();
    let mut v = Matrix::identity(n, n);
    let mut converged = false;
    for _ in 0..100 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = u.column(p).norm_squared();
                let beta = u.column(q).norm_squared();
                let gamma = u.column(p).dot(&u.column(q));
                if alpha == 0.0 || beta == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for mat in [&mut u, &mut v] {
                    for i in 0..mat.nrows() {
                        let (x, y) = (mat[(i, p)], mat[(i, q)]);
                        mat[(i, p)] = c * x - s * y;
                        mat[(i, q)] = s * x + c * y;
                    }
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Numeric(format!("Jacobi SVD of a {m}x{n} matrix did not converge")));
    }
    let norms: Vec<f64> = (0..n).map(|j| u.column(j).norm()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let uo = Matrix::from_fn(m, n, |i, j| {
        let c = order[j];
        if norms[c] > 0.0 {
            u[(i, c)] / norms[c]
        } else {
            0.0
        }
    });
    let v_t = Matrix::from_fn(n, n, |i, j| v[(j, order[i])]);
    let singular_values = nalgebra::DVector::from_iterator(n, order.iter().map(|&c| norms[c]));
    Ok(RawSvd { u: Some(uo), v_t: Some(v_t), singular_values })
}

/// Thin SVD of `a`, truncated at the numerical rank.
pub fn svd(a: &Matrix) -> Result<SvdFactors> {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return Ok(SvdFactors {
            u: Matrix::zeros(m, 0),
            singular_values: Vec::new(),
            v: Matrix::zeros(n, 0),
            rank: 0,
        });
    }
    let f = raw_svd(a)?;
    let sv: Vec<f64> = f.singular_values.iter().copied().collect();
    let cutoff = rank_cutoff(sv.first().copied().unwrap_or(0.0), m, n);
    let rank = sv.iter().take_while(|&&s| s > cutoff).count();
    let u = f.u.expect("requested U");
    let v_t = f.v_t.expect("requested V");
    Ok(SvdFactors {
        u: u.columns(0, rank).into_owned(),
        singular_values: sv[..rank].to_vec(),
        v: v_t.rows(0, rank).transpose(),
        rank,
    })
}

/// All singular values (descending, including those below the cutoff).
pub fn singular_values(a: &Matrix) -> Result<Vec<f64>> {
    if a.is_empty() {
        return Ok(Vec::new());
    }
    Ok(raw_svd(a)?.singular_values.iter().copied().collect())
}

/// Spectral norm `‖A‖₂`.
pub fn spectral_norm(a: &Matrix) -> Result<f64> {
    Ok(singular_values(a)?.first().copied().unwrap_or(0.0))
}

/// Numerical rank under the cutoff rule.
pub fn rank(a: &Matrix) -> Result<usize> {
    let sv = singular_values(a)?;
    let cutoff = rank_cutoff(sv.first().copied().unwrap_or(0.0), a.nrows(), a.ncols());
    Ok(sv.iter().filter(|&&s| s > cutoff).count())
}

/// Moore–Penrose pseudo-inverse `V Σ⁻¹ Uᵀ`.
pub fn pseudo_inverse(a: &Matrix) -> Result<Matrix> {
    let f = svd(a)?;
    let mut v = f.v.clone();
    for (j, s) in f.singular_values.iter().enumerate() {
        v.column_mut(j).scale_mut(1.0 / s);
    }
    Ok(v * f.u.transpose())
}

/// Orthonormal basis of the column space of `c`.
pub fn orth(c: &Matrix) -> Result<Matrix> {
    Ok(svd(c)?.u)
}

/// Eigen-decomposition of a symmetric matrix, eigenvalues ascending.
pub fn sym_eigen(a: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    let n = a.nrows();
    let e = SymmetricEigen::try_new(a.clone(), f64::EPSILON, SVD_MAX_ITER)
        .ok_or_else(|| Error::Numeric(format!("symmetric eigensolver failed on a {n}x{n} matrix")))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| e.eigenvalues[i].total_cmp(&e.eigenvalues[j]));
    let values = order.iter().map(|&i| e.eigenvalues[i]).collect();
    let vectors = Matrix::from_fn(n, n, |r, c| e.eigenvectors[(r, order[c])]);
    Ok((values, vectors))
}
