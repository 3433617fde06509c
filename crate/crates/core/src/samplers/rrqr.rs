//! Strong rank-revealing QR selection of k rows of an n×k matrix.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SamplingPlan};

/// Select `k` rows of `X` (n×k, rank k) so that
/// `σ_k(XᵀΩ) ≥ σ_k(Xᵀ) / √(f²k(n−k) + 1)`.
///
/// Starts from greedy column-pivoted QR on `W = Xᵀ` and then swaps a selected column of `W`
/// for an unselected one while some entry of `W_S⁻¹ W_rest` exceeds `f` in magnitude.
/// Each swap multiplies `|det W_S|` by more than `f`.
pub fn rrqr_select(x: &Matrix, f: f64) -> Result<SamplingPlan> {
    let (n, k) = x.shape();
    if !(f > 1.0) {
        return Err(Error::arg(format!("RRQR parameter f must exceed 1, got {f}")));
    }
    if k == 0 || n < k {
        return Err(Error::arg(format!("RRQR needs 1 <= k <= n, got a {n}x{k} input")));
    }
    let w = x.transpose();
    let mut selected = pivoted_qr_columns(&w, k)?;
    let cap = (k as f64 * (n as f64).ln() / f.ln()).ceil() as usize + 10 * k;
    let mut swaps = 0;
    loop {
        let rest: Vec<usize> = (0..n).filter(|j| !selected.contains(j)).collect();
        if rest.is_empty() {
            break;
        }
        let ws = crate::linalg::select_columns(&w, &selected);
        let wr = crate::linalg::select_columns(&w, &rest);
        let lu = ws.lu();
        let coeff = lu
            .solve(&wr)
            .ok_or_else(|| Error::Rank("selected columns became singular during RRQR".into()))?;
        let mut best = (0usize, 0usize, 0.0f64);
        for j in 0..coeff.ncols() {
            for i in 0..coeff.nrows() {
                if coeff[(i, j)].abs() > best.2 {
                    best = (i, j, coeff[(i, j)].abs());
                }
            }
        }
        if best.2 <= f {
            break;
        }
        swaps += 1;
        if swaps > cap {
            return Err(Error::Internal(format!("RRQR exceeded {cap} swaps")));
        }
        selected[best.0] = rest[best.1];
    }
    selected.sort_unstable();
    SamplingPlan::unweighted(n, &selected, false)
}

/// Greedy column pivoting: repeatedly take the column with the largest residual norm.
fn pivoted_qr_columns(w: &Matrix, k: usize) -> Result<Vec<usize>> {
    let n = w.ncols();
    let mut resid = w.clone();
    let scale = w.column_iter().map(|c| c.norm()).fold(0.0, f64::max);
    let tol = scale * (w.nrows().max(n) as f64) * crate::config::RANK_EPS * 10.0;
    let mut chosen = Vec::with_capacity(k);
    for _ in 0..k {
        let mut best = (usize::MAX, -1.0);
        for j in (0..n).filter(|j| !chosen.contains(j)) {
            let v = resid.column(j).norm();
            if v > best.1 {
                best = (j, v);
            }
        }
        if best.1 <= tol || best.0 == usize::MAX {
            return Err(Error::Rank(format!(
                "RRQR input has rank below k = {k} (found {})",
                chosen.len()
            )));
        }
        let q = resid.column(best.0) / best.1;
        let proj = q.transpose() * &resid;
        resid -= &q * proj;
        chosen.push(best.0);
    }
    Ok(chosen)
}

/// Guarantee constant `√(f²k(n−k) + 1)`.
pub fn rrqr_bound(n: usize, k: usize, f: f64) -> f64 {
    (f * f * k as f64 * (n - k) as f64 + 1.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::singular_values;
    use crate::sketch::gaussian_matrix;

    #[test]
    fn picks_identity_rows() {
        let x = Matrix::identity(7, 3);
        let plan = rrqr_select(&x, 2.0).unwrap();
        assert_eq!(plan.indices(), vec![0, 1, 2]);
    }

    #[test]
    fn bound_holds() {
        for seed in 0..30 {
            let x = gaussian_matrix(10, 2, seed);
            let plan = rrqr_select(&x, 2.0).unwrap();
            let xt = x.transpose();
            let s = singular_values(&plan.apply_columns(&xt).unwrap()).unwrap()[1];
            let full = singular_values(&xt).unwrap()[1];
            assert!(s >= full / rrqr_bound(10, 2, 2.0) - 1e-9);
        }
        assert!((rrqr_bound(10, 2, 2.0) - 65f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn rank_deficient_rejected() {
        let mut x = gaussian_matrix(6, 2, 1);
        let c0 = x.column(0).into_owned();
        x.column_mut(1).copy_from(&(c0 * 2.0));
        assert!(matches!(rrqr_select(&x, 2.0), Err(Error::Rank(_))));
        assert!(rrqr_select(&x, 1.0).is_err());
    }
}
