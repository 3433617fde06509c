//! Randomized column samplers: additive, adaptive and subspace sampling.

use crate::error::{Error, Result};
use crate::linalg::{column_norms_sq, residual_after_projection, row_norms_sq, svd, Matrix, Pick, SamplingPlan};
use crate::rng::{sample_indices, stream, StreamKind};

/// `r` i.i.d. columns with `p_i = ‖a_i‖² / ‖A‖_F²`, unit weights.
pub fn additive_sampling(a: &Matrix, r: usize, seed: u64) -> Result<SamplingPlan> {
    let n = a.ncols();
    if r == 0 || r > n {
        return Err(Error::arg(format!("additive sampling needs 1 <= r <= n = {n}, got r = {r}")));
    }
    let w = column_norms_sq(a);
    if w.iter().all(|&x| x == 0.0) {
        return Err(Error::arg("additive sampling of a zero matrix"));
    }
    let idx = sample_indices(&w, r, &mut stream(seed, StreamKind::Sampling, 0))?;
    SamplingPlan::unweighted(n, &idx, true)
}

/// Output of [`adaptive_sampling`].
#[derive(Debug, Clone)]
pub struct AdaptiveSample {
    pub plan: SamplingPlan,
    /// Set when `C1` already spans `A`; the plan then repeats the largest column of `A`.
    pub degenerate: bool,
}

/// `s` i.i.d. columns with probabilities proportional to the squared column norms of `A − C1C1⁺A`.
pub fn adaptive_sampling(a: &Matrix, c1: &Matrix, s: usize, seed: u64) -> Result<AdaptiveSample> {
    if c1.nrows() != a.nrows() {
        return Err(Error::dim(format!("C1 has {} rows but A has {}", c1.nrows(), a.nrows())));
    }
    if s == 0 {
        return Err(Error::arg("adaptive sampling needs s >= 1"));
    }
    let n = a.ncols();
    let b = residual_after_projection(a, c1)?;
    let w = column_norms_sq(&b);
    let total: f64 = w.iter().sum();
    let scale = a.norm_squared();
    if total <= 1e-24 * scale || total == 0.0 {
        let norms = column_norms_sq(a);
        let top = norms
            .iter()
            .enumerate()
            .fold(0, |best, (i, &v)| if v > norms[best] { i } else { best });
        let plan = SamplingPlan::unweighted(n, &vec![top; s], true)?;
        return Ok(AdaptiveSample { plan, degenerate: true });
    }
    let idx = sample_indices(&w, s, &mut stream(seed, StreamKind::Sampling, 0))?;
    Ok(AdaptiveSample { plan: SamplingPlan::unweighted(n, &idx, true)?, degenerate: false })
}

/// Probabilities used by [`subspace_sampling`].
///
/// For `β = 1` these are `‖x_i‖² / ‖X‖_F²`. For `β < 1` the leverage distribution is mixed with
/// the uniform one, `β·lev_i + (1 − β)/n`, which satisfies `p_i ≥ β·‖x_i‖²/‖X‖_F²`.
pub fn subspace_probabilities(x: &Matrix, beta: f64) -> Result<Vec<f64>> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::arg(format!("beta must lie in (0, 1], got {beta}")));
    }
    let w = row_norms_sq(x);
    let total: f64 = w.iter().sum();
    if total == 0.0 {
        return Err(Error::arg("subspace sampling of a zero matrix"));
    }
    let n = w.len() as f64;
    Ok(w.iter().map(|v| beta * v / total + (1.0 - beta) / n).collect())
}

/// `r` i.i.d. rows of `X` (n×k); a pick of row `i` carries weight `1/√(p_i r)`.
pub fn subspace_sampling(x: &Matrix, beta: f64, r: usize, seed: u64) -> Result<SamplingPlan> {
    if r == 0 {
        return Err(Error::arg("subspace sampling needs r >= 1"));
    }
    let p = subspace_probabilities(x, beta)?;
    let idx = sample_indices(&p, r, &mut stream(seed, StreamKind::Sampling, 0))?;
    let picks = idx
        .into_iter()
        .map(|i| Pick { index: i, weight: 1.0 / (p[i] * r as f64).sqrt() })
        .collect();
    SamplingPlan::new(x.nrows(), picks, true)
}

/// Leverage scores (squared row norms of the top-k right singular vectors) of `A`.
pub fn leverage_scores(a: &Matrix, k: usize) -> Result<Vec<f64>> {
    let f = svd(a)?;
    let k = k.min(f.rank);
    Ok(row_norms_sq(&f.v.columns(0, k).into_owned()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sketch::gaussian_matrix;

    #[test]
    fn additive_single_column() {
        let mut a = Matrix::zeros(3, 4);
        a[(1, 2)] = 5.0;
        let plan = additive_sampling(&a, 3, 1).unwrap();
        assert_eq!(plan.indices(), vec![2, 2, 2]);
        assert!(additive_sampling(&Matrix::zeros(2, 2), 1, 1).is_err());
        assert!(additive_sampling(&a, 5, 1).is_err());
    }

    #[test]
    fn additive_uniform_on_identity() {
        let n = 10;
        let mut counts = vec![0usize; n];
        for s in 0..1000 {
            for i in additive_sampling(&Matrix::identity(n, n), n, s).unwrap().indices() {
                counts[i] += 1;
            }
        }
        let draws = 10_000.0;
        let p = 1.0 / n as f64;
        let sd = (draws * p * (1.0 - p)).sqrt();
        for c in counts {
            assert!((c as f64 - draws * p).abs() <= 3.0 * sd, "count {c}");
        }
    }

    #[test]
    fn adaptive_degenerate_and_empty() {
        let a = gaussian_matrix(5, 4, 3);
        let out = adaptive_sampling(&a, &a, 3, 1).unwrap();
        assert!(out.degenerate);
        assert_eq!(out.plan.len(), 3);

        let empty = Matrix::zeros(5, 0);
        let x = adaptive_sampling(&a, &empty, 6, 9).unwrap();
        let y = additive_sampling(&a, 4, 9).unwrap();
        assert!(!x.degenerate);
        assert_eq!(&x.plan.indices()[..4], &y.indices()[..]);
    }

    #[test]
    fn subspace_single_row() {
        let mut x = Matrix::zeros(4, 1);
        x[(0, 0)] = 1.0;
        let plan = subspace_sampling(&x, 1.0, 9, 2).unwrap();
        assert!(plan.picks.iter().all(|p| p.index == 0 && (p.weight - 1.0 / 3.0).abs() < 1e-15));
        assert!(subspace_sampling(&Matrix::zeros(3, 2), 1.0, 2, 1).is_err());
        assert!(subspace_sampling(&x, 0.0, 2, 1).is_err());
    }

    #[test]
    fn mixed_probabilities_dominate() {
        let x = gaussian_matrix(30, 3, 4);
        let full = subspace_probabilities(&x, 1.0).unwrap();
        let mixed = subspace_probabilities(&x, 0.5).unwrap();
        assert!((mixed.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        for (m, f) in mixed.iter().zip(full.iter()) {
            assert!(*m >= 0.5 * f - 1e-15);
        }
    }
}
