//! Randomized approximate factorizations `A = (AZ)Zᵀ + E` with `EZ = 0`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{best_rank_k_in_subspace, orth, Matrix};
use crate::sketch::{gaussian_sketch, SketchOperator};
use crate::WidthPolicy;

/// Factorization method recorded in an [`ApproxBasis`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisMethod {
    FastFrobenius,
    FastSpectral,
}

/// An n×k matrix `Z` with orthonormal columns approximating the top right singular subspace.
#[derive(Debug, Clone)]
pub struct ApproxBasis {
    pub z: Matrix,
    pub k: usize,
    pub method: BasisMethod,
    pub seed: u64,
    /// Oversampling `p`; the sketch has `k + p` columns.
    pub oversampling: usize,
    /// Power-iteration exponent `q`.
    pub power: usize,
}

impl ApproxBasis {
    /// `E = A − AZZᵀ`.
    pub fn residual(&self, a: &Matrix) -> Matrix {
        a - (a * &self.z) * self.z.transpose()
    }
}

fn check_rank_range(a: &Matrix, k: usize) -> Result<()> {
    let limit = a.nrows().min(a.ncols());
    if k < 2 || k >= limit {
        return Err(Error::arg(format!("target rank must satisfy 2 <= k < min(m, n) = {limit}, got k = {k}")));
    }
    Ok(())
}

fn finish(a: &Matrix, y: &Matrix, k: usize) -> Result<Matrix> {
    let z = best_rank_k_in_subspace(a, y, k)?.z;
    if z.ncols() < k {
        return Err(Error::Rank(format!("A has rank {} < k = {k}", z.ncols())));
    }
    Ok(z)
}

/// `E‖A − AZZᵀ‖_F² ≤ (1 + ε)‖A − A_k‖_F²` from a Gaussian sketch with `p = ⌈k/ε + 1⌉` extra columns.
pub fn fast_frobenius_svd(a: &Matrix, k: usize, eps: f64, seed: u64) -> Result<ApproxBasis> {
    check_rank_range(a, k)?;
    frobenius_basis(a, k, eps, seed)
}

/// [`fast_frobenius_svd`] without the `k ≥ 2` restriction.
pub(crate) fn frobenius_basis(a: &Matrix, k: usize, eps: f64, seed: u64) -> Result<ApproxBasis> {
    if k == 0 || k >= a.nrows().min(a.ncols()) {
        return Err(Error::arg(format!("need 1 <= k < min(m, n), got k = {k}")));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::arg(format!("eps must lie in (0, 1), got {eps}")));
    }
    let p = (k as f64 / eps + 1.0).ceil() as usize;
    let y = gaussian_sketch(a, k + p, seed)?;
    let z = finish(a, &y, k)?;
    Ok(ApproxBasis { z, k, method: BasisMethod::FastFrobenius, seed, oversampling: p, power: 0 })
}

/// Smallest `q ≥ 0` with `(1 + √(k/(p−1)) + e√(k+p)/p · √(min(m,n) − k))^{1/(2q+1)} ≤ 1 + ε/√2`, `p = k`.
pub fn spectral_power(m: usize, n: usize, k: usize, eps: f64) -> usize {
    let p = k as f64;
    let kf = k as f64;
    let c = 1.0
        + (kf / (p - 1.0)).sqrt()
        + std::f64::consts::E * (kf + p).sqrt() / p * ((m.min(n) as f64 - kf).max(0.0)).sqrt();
    let target = 1.0 + eps / std::f64::consts::SQRT_2;
    let mut q = 0;
    while c.powf(1.0 / (2 * q + 1) as f64) > target {
        q += 1;
    }
    q
}

/// `E‖A − AZZᵀ‖₂ ≤ (√2 + ε)‖A − A_k‖₂` via `q` power iterations on a `2k`-column Gaussian sketch.
pub fn fast_spectral_svd(a: &Matrix, k: usize, eps: f64, seed: u64) -> Result<ApproxBasis> {
    check_rank_range(a, k)?;
    spectral_basis(a, k, eps, seed)
}

/// [`fast_spectral_svd`] allowing `k = min(m, n)`.
pub(crate) fn spectral_basis(a: &Matrix, k: usize, eps: f64, seed: u64) -> Result<ApproxBasis> {
    if k < 2 || k > a.nrows().min(a.ncols()) {
        return Err(Error::arg(format!("need 2 <= k <= min(m, n), got k = {k}")));
    }
    if !(eps > 0.0) {
        return Err(Error::arg(format!("eps must be positive, got {eps}")));
    }
    let q = spectral_power(a.nrows(), a.ncols(), k, eps);
    let mut y = gaussian_sketch(a, 2 * k, seed)?;
    for _ in 0..q {
        // Re-orthonormalizing between products keeps the span of (AAᵀ)^q A R without overflow.
        let basis = orth(&y)?;
        y = a * (a.transpose() * basis);
    }
    let z = finish(a, &y, k)?;
    Ok(ApproxBasis { z, k, method: BasisMethod::FastSpectral, seed, oversampling: k, power: q })
}

/// Sketch size `⌈200·k·ln(40k)·ln(40kn)/ε⌉` of [`srht_lowrank`].
pub fn srht_lowrank_size(k: usize, n: usize, eps: f64) -> usize {
    let kf = k as f64;
    (200.0 * kf * (40.0 * kf).ln() * (40.0 * kf * n as f64).ln() / eps).ceil() as usize
}

/// Rank-≤k approximation `Π^F_{C,k}(A)` with `C = AΘᵀ` for an SRHT `Θ` over the columns of `A`.
///
/// With `WidthPolicy::Strict` a sketch wider than `n` is refused.
pub fn srht_lowrank(a: &Matrix, k: usize, eps: f64, seed: u64, width: WidthPolicy) -> Result<Matrix> {
    let n = a.ncols();
    if k == 0 || k >= a.nrows().min(n) {
        return Err(Error::arg(format!("need 1 <= k < min(m, n), got k = {k}")));
    }
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::arg(format!("eps must lie in (0, 1/2), got {eps}")));
    }
    let r = srht_lowrank_size(k, n, eps);
    if r > n && width == WidthPolicy::Strict {
        return Err(Error::Oversized { what: "sketch wider than input", requested: r, available: n });
    }
    let op = SketchOperator::srht(n, r, seed)?;
    let c = op.apply(&a.transpose())?.transpose();
    Ok(best_rank_k_in_subspace(a, &c, k)?.approx)
}
