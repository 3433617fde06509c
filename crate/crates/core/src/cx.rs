//! Column-based low-rank approximation: oversampled CX, exactly-k column subset selection,
//! interpolative decompositions and a worst-case instance.

use serde::Serialize;

use crate::approx_svd::{fast_frobenius_svd, fast_spectral_svd, frobenius_basis, spectral_basis};
use crate::bounds::{Bound, Guarantee};
use crate::error::{Error, Result};
use crate::linalg::{
    best_rank_k_in_subspace, pseudo_inverse, select_rows, spectral_norm, svd, Matrix, Pick, SamplingPlan, SvdFactors,
};
use crate::samplers::{
    adaptive_sampling, barrier_dual_frobenius, barrier_dual_identity, barrier_dual_spectral, rrqr_bound,
    rrqr_select, subspace_sampling,
};

/// Norm in which an algorithm's guarantee is stated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    Spectral,
    Frobenius,
}

/// Variants of spectral-norm CX approximation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SpectralMode {
    Deterministic,
    Fast,
}

/// Variants of Frobenius-norm CX approximation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum FrobeniusMode {
    Deterministic,
    Fast,
    Relative,
}

/// Variants of exactly-k column subset selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum CsspMode {
    Spectral,
    Frobenius,
    #[value(name = "two_stage", alias = "two-stage")]
    TwoStage,
}

/// Selected columns together with their measured error and the applicable guarantee.
#[derive(Debug, Clone)]
pub struct CxResult {
    pub plan: SamplingPlan,
    /// `AΩS`.
    pub c: Matrix,
    /// `‖A − Π_{C,k}(A)‖₂` with the Frobenius-optimal Π (within `√2` of the spectral optimum).
    pub rank_k_error_spectral: f64,
    /// `‖A − Π^F_{C,k}(A)‖_F`.
    pub rank_k_error_frobenius: f64,
    /// Norm of the guarantee.
    pub norm: NormKind,
    /// `‖A − A_k‖` in that norm.
    pub baseline: f64,
    pub bound: Bound,
    pub warnings: Vec<String>,
}

impl CxResult {
    /// Error in the guarantee's norm.
    pub fn error(&self) -> f64 {
        match self.norm {
            NormKind::Spectral => self.rank_k_error_spectral,
            NormKind::Frobenius => self.rank_k_error_frobenius,
        }
    }

    /// `error / baseline` (infinite when the baseline is zero but the error is not).
    pub fn ratio(&self) -> f64 {
        ratio(self.error(), self.baseline)
    }

    /// Whether the measured error respects the bound (including estimator slack).
    pub fn satisfied(&self) -> bool {
        let e = self.error();
        self.bound.admits(if self.bound.squared { e * e } else { e })
    }
}

pub(crate) fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else if num <= 1e-12 {
        1.0
    } else {
        f64::INFINITY
    }
}

struct Prepared {
    f: SvdFactors,
}

fn prepare(a: &Matrix, k: usize) -> Result<Prepared> {
    crate::linalg::ensure_nonempty(a, "A")?;
    crate::linalg::ensure_finite(a, "A")?;
    if k == 0 {
        return Err(Error::arg("k must be at least 1"));
    }
    let f = svd(a)?;
    if k > f.rank {
        return Err(Error::Rank(format!("need k <= rank(A) = {}, got k = {k}", f.rank)));
    }
    Ok(Prepared { f })
}

fn check_r(k: usize, r: usize, n: usize) -> Result<()> {
    if r <= k {
        return Err(Error::arg(format!("need r > k, got r = {r}, k = {k}")));
    }
    if r > n {
        return Err(Error::arg(format!("need r <= n = {n}, got r = {r}")));
    }
    Ok(())
}

fn finish(
    a: &Matrix,
    k: usize,
    plan: SamplingPlan,
    prep: &Prepared,
    norm: NormKind,
    bound_of: impl FnOnce(f64) -> Bound,
    warnings: Vec<String>,
) -> Result<CxResult> {
    let c = plan.apply_columns(a)?;
    let approx = best_rank_k_in_subspace(a, &c, k.min(c.ncols()))?.approx;
    let resid = a - approx;
    let baseline = match norm {
        NormKind::Spectral => prep.f.sigma(k),
        NormKind::Frobenius => prep.f.tail_frobenius(k),
    };
    Ok(CxResult {
        plan,
        c,
        rank_k_error_spectral: spectral_norm(&resid)?,
        rank_k_error_frobenius: resid.norm(),
        norm,
        baseline,
        bound: bound_of(baseline),
        warnings,
    })
}

/// Spectral-norm CX approximation with `r > k` columns.
///
/// `Deterministic` sparsifies the top-k and bottom right singular vectors jointly and guarantees
/// `‖A − Π²_{C,k}(A)‖₂ ≤ (1 + (1+√((ρ−k)/r))/(1−√(k/r)))·‖A − A_k‖₂`. `Fast` replaces the SVD by
/// an approximate basis and sparsifies it against `I_n`, with an expectation bound.
pub fn cx_spectral(a: &Matrix, k: usize, r: usize, mode: SpectralMode, seed: u64) -> Result<CxResult> {
    let prep = prepare(a, k)?;
    let n = a.ncols();
    check_r(k, r, n)?;
    let (kf, rf) = (k as f64, r as f64);
    let shrink = 1.0 - (kf / rf).sqrt();
    let sqrt2 = std::f64::consts::SQRT_2;
    match mode {
        SpectralMode::Deterministic => {
            let rho = prep.f.rank;
            let vk = prep.f.v.columns(0, k).into_owned();
            let plan = if rho > k {
                let vrest = prep.f.v.columns(k, rho - k).into_owned();
                barrier_dual_spectral(&vk, &vrest, r)?
            } else {
                // A has rank k: only the lower barrier matters.
                barrier_dual_frobenius(&vk, &Matrix::zeros(1, n), r)?
            };
            let constant = 1.0 + (1.0 + ((rho - k) as f64 / rf).sqrt()) / shrink;
            finish(a, k, plan, &prep, NormKind::Spectral, |b| {
                Bound::new("1 + (1 + sqrt((rho - k)/r)) / (1 - sqrt(k/r))", constant, b, Guarantee::PerInstance)
                    .with_slack(sqrt2)
            }, Vec::new())
        }
        SpectralMode::Fast => {
            if k < 2 {
                return Err(Error::arg("fast spectral mode needs k >= 2"));
            }
            let z = fast_spectral_svd(a, k, 1.0, seed)?.z;
            let plan = barrier_dual_identity(&z, r)?;
            let constant = (sqrt2 + 1.0) * (1.0 + (1.0 + (n as f64 / rf).sqrt()) / shrink);
            finish(a, k, plan, &prep, NormKind::Spectral, |b| {
                Bound::new("(sqrt(2) + 1) * (1 + (1 + sqrt(n/r)) / (1 - sqrt(k/r)))", constant, b, Guarantee::Expectation)
                    .with_slack(sqrt2)
            }, Vec::new())
        }
    }
}

/// Frobenius-norm CX approximation with `r > k` columns.
///
/// `Deterministic` and `Fast` guarantee a constant factor; `Relative` adds a round of adaptive
/// sampling and bounds the expected squared error by `(1 + 6k/(r − 4k))·‖A − A_k‖_F²`.
pub fn cx_frobenius(a: &Matrix, k: usize, r: usize, mode: FrobeniusMode, seed: u64) -> Result<CxResult> {
    let prep = prepare(a, k)?;
    let n = a.ncols();
    check_r(k, r, n)?;
    let (kf, rf) = (k as f64, r as f64);
    let shrink = 1.0 - (kf / rf).sqrt();
    match mode {
        FrobeniusMode::Deterministic => {
            let vk = prep.f.v.columns(0, k).into_owned();
            let e = a - (a * &vk) * vk.transpose();
            let plan = barrier_dual_frobenius(&vk, &e, r)?;
            let constant = (1.0 + 1.0 / (shrink * shrink)).sqrt();
            finish(a, k, plan, &prep, NormKind::Frobenius, |b| {
                Bound::new("sqrt(1 + 1 / (1 - sqrt(k/r))^2)", constant, b, Guarantee::PerInstance)
            }, Vec::new())
        }
        FrobeniusMode::Fast => {
            if k < 2 {
                return Err(Error::arg("fast Frobenius mode needs k >= 2"));
            }
            let basis = fast_frobenius_svd(a, k, 0.1, seed)?;
            let plan = barrier_dual_frobenius(&basis.z, &basis.residual(a), r)?;
            let constant = (1.1 + 1.1 / (shrink * shrink)).sqrt();
            finish(a, k, plan, &prep, NormKind::Frobenius, |b| {
                Bound::new("sqrt(1.1 + 1.1 / (1 - sqrt(k/r))^2)", constant, b, Guarantee::Expectation)
            }, Vec::new())
        }
        FrobeniusMode::Relative => {
            if k < 2 {
                return Err(Error::arg("relative Frobenius mode needs k >= 2"));
            }
            if r <= 4 * k {
                return Err(Error::arg(format!("relative mode needs r > 4k = {}, got r = {r}", 4 * k)));
            }
            let mut warnings = Vec::new();
            if r <= 10 * k {
                warnings.push(format!("r = {r} is at most 10k = {}; the stated guarantee assumes r > 10k", 10 * k));
            }
            let basis = fast_frobenius_svd(a, k, 0.1, seed)?;
            let first = barrier_dual_frobenius(&basis.z, &basis.residual(a), 4 * k)?.with_unit_weights();
            let c1 = first.apply_columns(a)?;
            let second = adaptive_sampling(a, &c1, r - 4 * k, seed)?;
            if second.degenerate {
                warnings.push("first-stage columns already span A".into());
            }
            let plan = first.concat(&second.plan)?;
            let constant = 1.0 + 6.0 * kf / (rf - 4.0 * kf);
            finish(a, k, plan, &prep, NormKind::Frobenius, |b| {
                Bound::squared("1 + 6k / (r - 4k)", constant, b, Guarantee::Expectation)
            }, warnings)
        }
    }
}

/// Exactly-k column subset selection.
///
/// Errors are `‖A − CC⁺A‖`. `Spectral` runs RRQR on an approximate top-k basis; `Frobenius`
/// first sparsifies to `4k` columns with the barrier method; `TwoStage` first draws
/// `⌈8k ln(2k/δ)⌉` columns by subspace sampling.
pub fn cssp(a: &Matrix, k: usize, mode: CsspMode, delta: f64, seed: u64) -> Result<CxResult> {
    let prep = prepare(a, k)?;
    let n = a.ncols();
    let kf = k as f64;
    if mode != CsspMode::TwoStage && k < 2 {
        return Err(Error::arg("this CSSP mode needs k >= 2"));
    }
    match mode {
        CsspMode::Spectral => {
            let z = fast_spectral_svd(a, k, 0.5, seed)?.z;
            let plan = rrqr_select(&z, 2.0)?;
            let constant = 4.0 * rrqr_bound(n, k, 2.0);
            finish(a, k, plan, &prep, NormKind::Spectral, |b| {
                Bound::new("4 * sqrt(4k(n - k) + 1)", constant, b, Guarantee::Expectation)
            }, Vec::new())
        }
        CsspMode::Frobenius => {
            if 4 * k > n {
                return Err(Error::arg(format!("Frobenius CSSP needs 4k <= n, got k = {k}, n = {n}")));
            }
            let basis = fast_frobenius_svd(a, k, 0.5, seed)?;
            let first = barrier_dual_frobenius(&basis.z, &basis.residual(a), 4 * k)?;
            let plan = refine_with_rrqr(&basis.z, &first, k)?;
            finish(a, k, plan, &prep, NormKind::Frobenius, |b| {
                Bound::new("9k", 9.0 * kf, b, Guarantee::Expectation)
            }, Vec::new())
        }
        CsspMode::TwoStage => {
            if !(delta > 0.0 && delta < 1.0) {
                return Err(Error::arg(format!("delta must lie in (0, 1), got {delta}")));
            }
            let basis = frobenius_basis(a, k, 0.5, seed)?;
            let r1 = (8.0 * kf * (2.0 * kf / delta).ln()).ceil().max(kf) as usize;
            let first = subspace_sampling(&basis.z, 1.0, r1, seed)?;
            let plan = refine_with_rrqr(&basis.z, &merge_duplicates(&first), k)?;
            let constant = 26.0 * kf * (2.0 * kf / delta).ln().sqrt() / delta;
            finish(a, k, plan, &prep, NormKind::Frobenius, |b| {
                Bound::new(
                    "26k * sqrt(ln(2k/delta)) / delta",
                    constant,
                    b,
                    Guarantee::Probability { probability: 1.0 - 3.0 * delta },
                )
            }, Vec::new())
        }
    }
}

/// Collapse repeated picks of the same index; `c` copies of weight `w` become one of weight `w√c`.
fn merge_duplicates(plan: &SamplingPlan) -> SamplingPlan {
    let mut picks: Vec<Pick> = Vec::new();
    let mut pos = std::collections::HashMap::new();
    for p in &plan.picks {
        match pos.get(&p.index) {
            Some(&i) => {
                let q: &mut Pick = &mut picks[i];
                q.weight = (q.weight * q.weight + p.weight * p.weight).sqrt();
            }
            None => {
                pos.insert(p.index, picks.len());
                picks.push(*p);
            }
        }
    }
    SamplingPlan { source_dim: plan.source_dim, picks, with_replacement: false }
}

/// RRQR on the rows of `(ZᵀΩS)ᵀ`, mapped back to indices of the original columns.
fn refine_with_rrqr(z: &Matrix, first: &SamplingPlan, k: usize) -> Result<SamplingPlan> {
    let x = first.apply_columns(&z.transpose())?;
    let inner = rrqr_select(&x.transpose(), 2.0)?;
    let mut idx: Vec<usize> = inner.indices().iter().map(|&i| first.picks[i].index).collect();
    idx.sort_unstable();
    debug_assert_eq!(idx.len(), k);
    SamplingPlan::unweighted(z.nrows(), &idx, false)
}

/// Output of [`interpolative_decomposition`].
#[derive(Debug, Clone)]
pub struct Interpolative {
    /// The selected columns of `A` (m×k).
    pub c: Matrix,
    /// k×n coefficient matrix; its columns at `indices` form `I_k`.
    pub x: Matrix,
    pub indices: Vec<usize>,
}

/// `A ≈ CX` with `C` made of `k` actual columns of `A` and `X = (ZᵀΩ)⁺Zᵀ`.
///
/// `X` contains `I_k`, has entries bounded by 2 and `σ_min(X) ≥ 1`; if `rank(A) = k` then `A = CX`.
pub fn interpolative_decomposition(a: &Matrix, k: usize, seed: u64) -> Result<Interpolative> {
    crate::linalg::ensure_nonempty(a, "A")?;
    if k < 2 || k > a.nrows().min(a.ncols()) {
        return Err(Error::arg(format!("need 2 <= k <= min(m, n), got k = {k}")));
    }
    let z = spectral_basis(a, k, 0.5, seed)?.z;
    let plan = rrqr_select(&z, 2.0)?;
    let indices = plan.indices();
    let zs = select_rows(&z, &indices);
    let mut x = pseudo_inverse(&zs.transpose())? * z.transpose();
    for (j, &col) in indices.iter().enumerate() {
        for i in 0..k {
            x[(i, col)] = if i == j { 1.0 } else { 0.0 };
        }
    }
    Ok(Interpolative { c: plan.apply_columns(a)?, x, indices })
}

/// The `(n+1)×n` matrix with columns `e_1 + α·e_{j+1}`, on which every r-column subset has
/// `‖A − CC⁺A‖₂² / ‖A − A_k‖₂² = (n + α²)/(r + α²)`.
pub fn lower_bound_instance(n: usize, alpha: f64) -> Result<Matrix> {
    if n < 2 {
        return Err(Error::arg(format!("need n >= 2, got {n}")));
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::arg(format!("alpha must be positive, got {alpha}")));
    }
    let mut a = Matrix::zeros(n + 1, n);
    for j in 0..n {
        a[(0, j)] = 1.0;
        a[(j + 1, j)] = alpha;
    }
    Ok(a)
}

/// `(n + α²)/(r + α²)`.
pub fn lower_bound_ratio(n: usize, r: usize, alpha: f64) -> f64 {
    let a2 = alpha * alpha;
    (n as f64 + a2) / (r as f64 + a2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{residual_after_projection, singular_values};
    use crate::sketch::gaussian_matrix;

    fn low_rank_plus_noise(m: usize, n: usize, k: usize, noise: f64, seed: u64) -> Matrix {
        gaussian_matrix(m, k, seed) * gaussian_matrix(k, n, seed + 1) + gaussian_matrix(m, n, seed + 2) * noise
    }

    #[test]
    fn deterministic_frobenius_bound() {
        let a = low_rank_plus_noise(40, 30, 2, 0.1, 1);
        let out = cx_frobenius(&a, 2, 8, FrobeniusMode::Deterministic, 0).unwrap();
        assert!((out.bound.constant - 5f64.sqrt()).abs() < 1e-12);
        assert!(out.satisfied());
        assert!(out.plan.len() <= 8);
    }

    #[test]
    fn deterministic_spectral_bound() {
        let a = gaussian_matrix(30, 10, 3);
        let out = cx_spectral(&a, 2, 8, SpectralMode::Deterministic, 0).unwrap();
        assert!((out.bound.constant - 5.0).abs() < 1e-12);
        assert!(out.satisfied());
    }

    #[test]
    fn rank_k_input_has_zero_error() {
        let a = gaussian_matrix(20, 2, 5) * gaussian_matrix(2, 16, 6);
        let tol = 1e-9 * a.norm();
        for mode in [FrobeniusMode::Deterministic, FrobeniusMode::Fast, FrobeniusMode::Relative] {
            assert!(cx_frobenius(&a, 2, 9, mode, 1).unwrap().rank_k_error_frobenius < tol);
        }
        for mode in [SpectralMode::Deterministic, SpectralMode::Fast] {
            assert!(cx_spectral(&a, 2, 6, mode, 1).unwrap().rank_k_error_spectral < tol);
        }
        assert!(cx_spectral(&a, 3, 6, SpectralMode::Deterministic, 1).is_err());
    }

    #[test]
    fn chained_inequality() {
        let a = low_rank_plus_noise(30, 24, 3, 0.2, 8);
        for out in [
            cx_frobenius(&a, 3, 12, FrobeniusMode::Fast, 4).unwrap(),
            cx_frobenius(&a, 3, 14, FrobeniusMode::Relative, 4).unwrap(),
            cx_spectral(&a, 3, 12, SpectralMode::Fast, 4).unwrap(),
        ] {
            let proj = residual_after_projection(&a, &out.c).unwrap();
            assert!(proj.norm() <= out.rank_k_error_frobenius + 1e-10);
            assert!(out.rank_k_error_frobenius >= out.baseline * 0.0);
        }
    }

    #[test]
    fn cssp_modes_pick_k_columns() {
        let a = low_rank_plus_noise(30, 12, 2, 0.1, 9);
        for mode in [CsspMode::Spectral, CsspMode::Frobenius, CsspMode::TwoStage] {
            let out = cssp(&a, 2, mode, 0.1, 3).unwrap();
            assert_eq!(out.plan.len(), 2);
            assert_eq!(out.plan.distinct(), 2);
            assert!(out.plan.weights().iter().all(|&w| w == 1.0));
        }
    }

    #[test]
    fn id_properties() {
        let a = gaussian_matrix(15, 12, 10);
        let id = interpolative_decomposition(&a, 3, 2).unwrap();
        for (j, &col) in id.indices.iter().enumerate() {
            for i in 0..3 {
                assert_eq!(id.x[(i, col)], if i == j { 1.0 } else { 0.0 });
            }
        }
        assert!(id.x.iter().all(|v| v.abs() <= 2.0 + 1e-12));
        let sv = singular_values(&id.x).unwrap();
        assert!(sv[2] >= 1.0 - 1e-12);

        let low = gaussian_matrix(15, 3, 11) * gaussian_matrix(3, 12, 12);
        let id = interpolative_decomposition(&low, 3, 2).unwrap();
        assert!((&id.c * &id.x - &low).norm() <= 1e-8 * low.norm());
    }

    #[test]
    fn lower_bound_spectrum() {
        let a = lower_bound_instance(5, 1.0).unwrap();
        let sv = singular_values(&a).unwrap();
        assert!((sv[0] * sv[0] - 6.0).abs() < 1e-12);
        for s in &sv[1..] {
            assert!((s * s - 1.0).abs() < 1e-12);
        }
        assert!((lower_bound_ratio(5, 2, 1.0) - 2.0).abs() < 1e-15);
        assert!(lower_bound_instance(1, 1.0).is_err());
        assert!(lower_bound_instance(3, 0.0).is_err());
    }

    #[test]
    fn argument_errors() {
        let a = gaussian_matrix(10, 8, 1);
        assert!(cx_frobenius(&a, 2, 2, FrobeniusMode::Deterministic, 0).is_err());
        assert!(cx_frobenius(&a, 2, 9, FrobeniusMode::Deterministic, 0).is_err());
        assert!(cx_frobenius(&a, 2, 8, FrobeniusMode::Relative, 0).is_err());
        assert!(cx_spectral(&a, 9, 10, SpectralMode::Deterministic, 0).is_err());
    }
}
