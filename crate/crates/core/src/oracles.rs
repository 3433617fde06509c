//! Brute-force ground truth for tiny instances.

use itertools::Itertools;
use serde::Serialize;

use crate::cx::NormKind;
use crate::error::{Error, Result};
use crate::linalg::{best_rank_k_in_subspace, residual_after_projection, select_columns, spectral_norm, Matrix};

/// Largest number of subsets [`best_subset_exhaustive`] will enumerate.
pub const SUBSET_GUARD: u128 = 1_000_000;
/// Largest number of subsets [`volume_probabilities_exhaustive`] will enumerate.
pub const VOLUME_GUARD: u128 = 100_000;

/// Error measured for each candidate subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SubsetMode {
    /// `‖A − CC⁺A‖`.
    CcPlus,
    /// `‖A − Π_{C,k}(A)‖` with the Frobenius-optimal rank-k projection.
    PiCk,
}

/// Minimizer found by [`best_subset_exhaustive`].
#[derive(Debug, Clone, Serialize)]
pub struct SubsetOptimum {
    pub indices: Vec<usize>,
    pub error: f64,
    /// Number of subsets examined.
    pub examined: usize,
}

/// `C(n, r)`, saturating.
pub fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

fn guard(n: usize, r: usize, limit: u128) -> Result<()> {
    let count = binomial(n, r);
    if count > limit {
        return Err(Error::Guard { count, limit });
    }
    Ok(())
}

/// Error of a single subset under `norm` and `mode`.
pub fn subset_error(a: &Matrix, idx: &[usize], k: usize, norm: NormKind, mode: SubsetMode) -> Result<f64> {
    let c = select_columns(a, idx);
    let resid = match mode {
        SubsetMode::CcPlus => residual_after_projection(a, &c)?,
        SubsetMode::PiCk => a - best_rank_k_in_subspace(a, &c, k.min(c.ncols()))?.approx,
    };
    match norm {
        NormKind::Spectral => spectral_norm(&resid),
        NormKind::Frobenius => Ok(resid.norm()),
    }
}

/// Enumerate every r-column subset and return the one of least error (ties go to the
/// lexicographically first subset).
pub fn best_subset_exhaustive(
    a: &Matrix,
    k: usize,
    r: usize,
    norm: NormKind,
    mode: SubsetMode,
) -> Result<SubsetOptimum> {
    let n = a.ncols();
    if r == 0 || r > n {
        return Err(Error::arg(format!("need 1 <= r <= n = {n}, got r = {r}")));
    }
    if mode == SubsetMode::PiCk && (k == 0 || k > r) {
        return Err(Error::arg(format!("need 1 <= k <= r, got k = {k}, r = {r}")));
    }
    guard(n, r, SUBSET_GUARD)?;
    let mut best: Option<SubsetOptimum> = None;
    let mut examined = 0;
    for idx in (0..n).combinations(r) {
        examined += 1;
        let e = subset_error(a, &idx, k, norm, mode)?;
        if best.as_ref().is_none_or(|b| e < b.error) {
            best = Some(SubsetOptimum { indices: idx, error: e, examined: 0 });
        }
    }
    let mut best = best.expect("at least one subset");
    best.examined = examined;
    Ok(best)
}

/// Every k-subset with its volume-sampling probability `det(C_SᵀC_S) / Σ_T det(C_TᵀC_T)`.
pub fn volume_probabilities_exhaustive(a: &Matrix, k: usize) -> Result<Vec<(Vec<usize>, f64)>> {
    let n = a.ncols();
    if k == 0 || k > n {
        return Err(Error::arg(format!("need 1 <= k <= n = {n}, got k = {k}")));
    }
    guard(n, k, VOLUME_GUARD)?;
    let mut out: Vec<(Vec<usize>, f64)> = (0..n)
        .combinations(k)
        .map(|idx| {
            let c = select_columns(a, &idx);
            let det = (c.transpose() * &c).determinant().max(0.0);
            (idx, det)
        })
        .collect();
    let total: f64 = out.iter().map(|(_, d)| d).sum();
    if !(total > 0.0) {
        return Err(Error::Rank(format!("every {k}-column subset is singular")));
    }
    for (_, d) in &mut out {
        *d /= total;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cx::{lower_bound_instance, lower_bound_ratio};
    use crate::linalg::svd;
    use crate::sketch::gaussian_matrix;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(40, 20), 137_846_528_820);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(200, 100), u128::MAX);
    }

    #[test]
    fn identity_is_exact() {
        let a = Matrix::identity(3, 3);
        let best = best_subset_exhaustive(&a, 2, 3, NormKind::Frobenius, SubsetMode::CcPlus).unwrap();
        assert!(best.error < 1e-14);
    }

    #[test]
    fn lower_bound_subsets_all_equal() {
        let a = lower_bound_instance(5, 1.0).unwrap();
        let tail = svd(&a).unwrap().sigma(1);
        for idx in (0..5).combinations(2) {
            let e = subset_error(&a, &idx, 1, NormKind::Spectral, SubsetMode::CcPlus).unwrap();
            assert!(((e / tail).powi(2) - 2.0).abs() < 1e-9);
        }
        assert_eq!(lower_bound_ratio(5, 2, 1.0), 2.0);
    }

    #[test]
    fn guard_refuses() {
        let a = Matrix::zeros(2, 40);
        assert!(matches!(
            best_subset_exhaustive(&a, 1, 20, NormKind::Frobenius, SubsetMode::CcPlus),
            Err(Error::Guard { .. })
        ));
        assert!(matches!(volume_probabilities_exhaustive(&a, 10), Err(Error::Guard { .. })));
    }

    #[test]
    fn volume_probabilities() {
        let mut a = Matrix::zeros(3, 4);
        a[(0, 1)] = 1.0;
        a[(1, 3)] = 2.0;
        let p = volume_probabilities_exhaustive(&a, 2).unwrap();
        let hit = p.iter().find(|(i, _)| i == &vec![1, 3]).unwrap();
        assert!((hit.1 - 1.0).abs() < 1e-15);

        let a = gaussian_matrix(5, 5, 11);
        let p = volume_probabilities_exhaustive(&a, 2).unwrap();
        assert!((p.iter().map(|(_, q)| q).sum::<f64>() - 1.0).abs() < 1e-12);
        let expected: f64 = p
            .iter()
            .map(|(idx, q)| q * subset_error(&a, idx, 2, NormKind::Frobenius, SubsetMode::CcPlus).unwrap().powi(2))
            .sum();
        assert!(expected <= 3.0 * svd(&a).unwrap().tail_frobenius(2).powi(2));
    }
}
