//! k-means cost, a Lloyd baseline and dimension reduction for k-means.

use rand::Rng;
use serde::Serialize;

use crate::approx_svd::fast_frobenius_svd;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SamplingPlan};
use crate::rng::{stream, StreamKind};
use crate::samplers::subspace_sampling;
use crate::sketch::sign_sketch;

/// A partition of `m` points into `k` nonempty clusters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClusterAssignment {
    pub labels: Vec<usize>,
    pub k: usize,
}

impl ClusterAssignment {
    /// Validates label range and that no cluster is empty.
    pub fn new(labels: Vec<usize>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::arg("k must be at least 1"));
        }
        let mut sizes = vec![0usize; k];
        for &l in &labels {
            if l >= k {
                return Err(Error::arg(format!("label {l} out of range 0..{k}")));
            }
            sizes[l] += 1;
        }
        if let Some(j) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::arg(format!("cluster {j} is empty")));
        }
        Ok(ClusterAssignment { labels, k })
    }

    /// Points per cluster.
    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.k];
        for &l in &self.labels {
            sizes[l] += 1;
        }
        sizes
    }

    /// Whether `other` is the same partition up to renaming clusters.
    pub fn same_partition(&self, other: &ClusterAssignment) -> bool {
        if self.labels.len() != other.labels.len() || self.k != other.k {
            return false;
        }
        let mut map = vec![usize::MAX; self.k];
        let mut used = vec![false; self.k];
        for (&a, &b) in self.labels.iter().zip(&other.labels) {
            if map[a] == usize::MAX {
                if used[b] {
                    return false;
                }
                map[a] = b;
                used[b] = true;
            } else if map[a] != b {
                return false;
            }
        }
        true
    }
}

/// Normalized indicator `X` (m×k) with `X_ij = 1/√s_j` when point `i` is in cluster `j`.
pub fn indicator_matrix(assign: &ClusterAssignment) -> Matrix {
    let sizes = assign.sizes();
    let mut x = Matrix::zeros(assign.labels.len(), assign.k);
    for (i, &l) in assign.labels.iter().enumerate() {
        x[(i, l)] = 1.0 / (sizes[l] as f64).sqrt();
    }
    x
}

fn check_labels(a: &Matrix, assign: &ClusterAssignment) -> Result<()> {
    if assign.labels.len() != a.nrows() {
        return Err(Error::dim(format!(
            "{} labels for {} points",
            assign.labels.len(),
            a.nrows()
        )));
    }
    Ok(())
}

/// `‖A − XXᵀA‖_F²` for the normalized indicator `X` of `assign`.
pub fn kmeans_cost(a: &Matrix, assign: &ClusterAssignment) -> Result<f64> {
    check_labels(a, assign)?;
    let x = indicator_matrix(assign);
    let xta = x.transpose() * a;
    Ok((a - &x * xta).norm_squared())
}

/// Cluster means (k×n).
pub fn centroids(a: &Matrix, assign: &ClusterAssignment) -> Result<Matrix> {
    check_labels(a, assign)?;
    let sizes = assign.sizes();
    let mut mu = Matrix::zeros(assign.k, a.ncols());
    for (i, &l) in assign.labels.iter().enumerate() {
        for j in 0..a.ncols() {
            mu[(l, j)] += a[(i, j)];
        }
    }
    for (l, &s) in sizes.iter().enumerate() {
        mu.row_mut(l).scale_mut(1.0 / s as f64);
    }
    Ok(mu)
}

/// `Σ_i ‖p_i − μ(p_i)‖²`.
pub fn centroid_cost(a: &Matrix, assign: &ClusterAssignment) -> Result<f64> {
    let mu = centroids(a, assign)?;
    Ok(assign
        .labels
        .iter()
        .enumerate()
        .map(|(i, &l)| (a.row(i) - mu.row(l)).norm_squared())
        .sum())
}

fn sq_dist(a: &Matrix, i: usize, mu: &Matrix, l: usize) -> f64 {
    (0..a.ncols()).map(|j| (a[(i, j)] - mu[(l, j)]).powi(2)).sum()
}

fn seed_plus_plus(a: &Matrix, k: usize, rng: &mut impl Rng) -> Matrix {
    let m = a.nrows();
    let mut chosen = vec![rng.gen_range(0..m)];
    let mut d2: Vec<f64> = (0..m).map(|i| (a.row(i) - a.row(chosen[0])).norm_squared()).collect();
    while chosen.len() < k {
        let total: f64 = d2.iter().sum();
        let next = if total > 0.0 {
            let mut target = rng.gen::<f64>() * total;
            let mut pick = m - 1;
            for (i, &d) in d2.iter().enumerate() {
                if target < d {
                    pick = i;
                    break;
                }
                target -= d;
            }
            pick
        } else {
            (0..m).find(|i| !chosen.contains(i)).unwrap_or(0)
        };
        chosen.push(next);
        for (i, d) in d2.iter_mut().enumerate() {
            *d = d.min((a.row(i) - a.row(next)).norm_squared());
        }
    }
    crate::linalg::select_rows(a, &chosen)
}

fn lloyd_once(a: &Matrix, k: usize, rng: &mut impl Rng) -> (Vec<usize>, f64) {
    let m = a.nrows();
    let mut mu = seed_plus_plus(a, k, rng);
    let mut labels = vec![0usize; m];
    let mut prev = f64::INFINITY;
    for _ in 0..300 {
        let mut cost = 0.0;
        for (i, label) in labels.iter_mut().enumerate() {
            let mut best = (0, f64::INFINITY);
            for l in 0..k {
                let d = sq_dist(a, i, &mu, l);
                if d < best.1 {
                    best = (l, d);
                }
            }
            *label = best.0;
            cost += best.1;
        }
        repair_empty(a, &mut labels, &mut mu, k);
        let assign = ClusterAssignment { labels: labels.clone(), k };
        mu = centroids(a, &assign).expect("labels match points");
        let converged = prev.is_finite() && (prev - cost).abs() <= 1e-9 * prev.max(f64::MIN_POSITIVE);
        prev = cost;
        if converged || cost == 0.0 {
            break;
        }
    }
    let assign = ClusterAssignment { labels, k };
    let cost = centroid_cost(a, &assign).expect("labels match points");
    (assign.labels, cost)
}

/// Move the point farthest from its centroid (in a cluster of size > 1) into each empty cluster.
fn repair_empty(a: &Matrix, labels: &mut [usize], mu: &mut Matrix, k: usize) {
    loop {
        let mut sizes = vec![0usize; k];
        for &l in labels.iter() {
            sizes[l] += 1;
        }
        let Some(empty) = sizes.iter().position(|&s| s == 0) else { return };
        let mut far = (usize::MAX, -1.0);
        for (i, &l) in labels.iter().enumerate() {
            if sizes[l] > 1 {
                let d = sq_dist(a, i, mu, l);
                if d > far.1 {
                    far = (i, d);
                }
            }
        }
        if far.0 == usize::MAX {
            return;
        }
        labels[far.0] = empty;
        for j in 0..a.ncols() {
            mu[(empty, j)] = a[(far.0, j)];
        }
    }
}

/// k-means++-seeded Lloyd iterations, best of `restarts` runs (ties go to the earliest run).
///
/// Each run stops when the cost changes by less than `1e-9` relatively, or after 300 iterations.
pub fn lloyd(a: &Matrix, k: usize, restarts: usize, seed: u64) -> Result<ClusterAssignment> {
    let m = a.nrows();
    if k == 0 || k > m {
        return Err(Error::arg(format!("need 1 <= k <= m = {m}, got k = {k}")));
    }
    if restarts == 0 {
        return Err(Error::arg("restarts must be at least 1"));
    }
    crate::linalg::ensure_finite(a, "A")?;
    let mut best: Option<(Vec<usize>, f64)> = None;
    for t in 0..restarts {
        let mut rng = stream(seed, StreamKind::Lloyd, t as u64);
        let (labels, cost) = lloyd_once(a, k, &mut rng);
        if best.as_ref().is_none_or(|b| cost < b.1) {
            best = Some((labels, cost));
        }
    }
    ClusterAssignment::new(best.expect("at least one restart").0, k)
}

/// Dimension-reduction strategy for k-means.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum FeatureMethod {
    /// Sample `⌈c0·4k·ln(200k)/ε²⌉` actual features by leverage scores of an approximate basis.
    Select,
    /// Project onto `⌈c0·k/ε²⌉` random sign combinations.
    Rp,
    /// Project onto `k` approximate top right singular vectors.
    Svd,
}

/// Output of [`reduce_features`].
#[derive(Debug, Clone)]
pub struct FeatureReduction {
    /// m×r reduced data.
    pub c: Matrix,
    pub r: usize,
    pub method: FeatureMethod,
    /// Selected features (select method).
    pub plan: Option<SamplingPlan>,
    /// Basis the data was projected on (svd method).
    pub basis: Option<Matrix>,
    pub warnings: Vec<String>,
}

/// Number of reduced dimensions for each method.
pub fn reduced_dimension(method: FeatureMethod, k: usize, eps: f64, c0: f64) -> usize {
    let kf = k as f64;
    match method {
        FeatureMethod::Select => (c0 * 4.0 * kf * (200.0 * kf).ln() / (eps * eps)).ceil() as usize,
        FeatureMethod::Rp => (c0 * kf / (eps * eps)).ceil() as usize,
        FeatureMethod::Svd => k,
    }
}

/// Reduce `A` (m points × n features) to `r` dimensions for clustering into `k` groups.
pub fn reduce_features(
    a: &Matrix,
    k: usize,
    eps: f64,
    method: FeatureMethod,
    c0: f64,
    seed: u64,
) -> Result<FeatureReduction> {
    let n = a.ncols();
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::arg(format!("eps must lie in (0, 1), got {eps}")));
    }
    if !(c0 > 0.0 && c0.is_finite()) {
        return Err(Error::arg(format!("c0 must be positive, got {c0}")));
    }
    let mut warnings = Vec::new();
    if method != FeatureMethod::Svd && eps > 1.0 / 3.0 + 1e-12 {
        warnings.push(format!("eps = {eps} is above 1/3, outside the guarantee's hypothesis"));
    }
    let r = reduced_dimension(method, k, eps, c0);
    if method != FeatureMethod::Svd && r >= n {
        return Err(Error::Oversized { what: "reduction wider than input", requested: r, available: n });
    }
    match method {
        FeatureMethod::Select => {
            let z = fast_frobenius_svd(a, k, eps, seed)?.z;
            let plan = subspace_sampling(&z, 1.0, r, seed)?;
            Ok(FeatureReduction { c: plan.apply_columns(a)?, r, method, plan: Some(plan), basis: None, warnings })
        }
        FeatureMethod::Rp => {
            if k < 2 || k >= a.nrows().min(n) {
                return Err(Error::arg(format!("need 2 <= k < min(m, n), got k = {k}")));
            }
            Ok(FeatureReduction { c: sign_sketch(a, r, seed)?, r, method, plan: None, basis: None, warnings })
        }
        FeatureMethod::Svd => {
            let z = fast_frobenius_svd(a, k, eps, seed)?.z;
            Ok(FeatureReduction { c: a * &z, r, method, plan: None, basis: Some(z), warnings })
        }
    }
}
