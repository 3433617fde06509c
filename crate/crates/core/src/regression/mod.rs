//! Coresets for constrained least squares and the solvers used to evaluate them.

mod nnls;

use std::time::Instant;

use serde::Serialize;

pub use nnls::{least_squares, nnls, nnls_kkt_holds};

use crate::error::{Error, Result};
use crate::linalg::{hstack, svd, Matrix, SamplingPlan, Vector};
use crate::samplers::{barrier_run, subspace_sampling, BarrierUpper};
use crate::sketch::SketchOperator;
use crate::WidthPolicy;

/// Feasible set of a regression problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    None,
    Nonnegative,
}

/// `min_{x ∈ D} ‖Ax − b‖₂²` with `A` of full column rank.
#[derive(Debug, Clone)]
pub struct RegressionProblem {
    pub a: Matrix,
    pub b: Vector,
    pub constraint: Constraint,
}

impl RegressionProblem {
    /// Validates `m > n`, `rank(A) = n` and matching lengths.
    pub fn new(a: Matrix, b: Vector, constraint: Constraint) -> Result<Self> {
        let (m, n) = a.shape();
        if n == 0 || m <= n {
            return Err(Error::arg(format!("regression needs m > n >= 1, got {m}x{n}")));
        }
        if b.len() != m {
            return Err(Error::dim(format!("b has length {} but A has {m} rows", b.len())));
        }
        crate::linalg::ensure_finite(&a, "A")?;
        if b.iter().any(|v| !v.is_finite()) {
            return Err(Error::arg("b has a non-finite entry"));
        }
        let rank = crate::linalg::rank(&a)?;
        if rank < n {
            return Err(Error::Rank(format!("A has rank {rank} < n = {n}")));
        }
        Ok(RegressionProblem { a, b, constraint })
    }

    /// `‖Ax − b‖₂²`.
    pub fn objective(&self, x: &Vector) -> f64 {
        (&self.a * x - &self.b).norm_squared()
    }
}

/// Solve `min ‖Cx − b‖₂` under the given constraint.
pub fn solve_ls(c: &Matrix, b: &Vector, constraint: Constraint) -> Result<Vector> {
    match constraint {
        Constraint::None => least_squares(c, b),
        Constraint::Nonnegative => nnls(c, b),
    }
}

/// How the coreset rows are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum CoresetMethod {
    /// Deterministic barrier sampling of the left singular vectors of `[A, b]`.
    Barrier,
    /// Leverage-score sampling of the same vectors.
    Subspace,
    /// Uniform sampling of randomized-Hadamard-mixed rows.
    Srht,
}

/// Parameters of [`build_coreset`].
#[derive(Debug, Clone, Copy)]
pub struct CoresetOptions {
    pub method: CoresetMethod,
    pub eps: f64,
    pub delta: f64,
    pub seed: u64,
    /// Whether a size formula exceeding the number of rows is accepted.
    pub width: WidthPolicy,
}

impl CoresetOptions {
    pub fn new(method: CoresetMethod, eps: f64) -> Self {
        CoresetOptions { method, eps, delta: 0.1, seed: 0, width: WidthPolicy::Strict }
    }

    pub fn delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn width(mut self, width: WidthPolicy) -> Self {
        self.width = width;
        self
    }
}

/// A reweighted row subset `(C, b_c) = (SᵀΩᵀA, SᵀΩᵀb)`.
#[derive(Debug, Clone)]
pub struct Coreset {
    /// Row picks. For SRHT they index the rows of the mixed, zero-padded `HD[A, b]`.
    pub plan: SamplingPlan,
    pub c: Matrix,
    pub b_c: Vector,
    pub method: CoresetMethod,
    pub eps: f64,
    pub delta: f64,
    /// Size from the method's formula.
    pub r: usize,
    /// `rank([A, b])`.
    pub rank_y: usize,
    /// The mixing transform for SRHT coresets.
    pub transform: Option<SketchOperator>,
    pub warnings: Vec<String>,
}

/// Row count prescribed for each method (natural logarithms throughout).
///
/// * barrier: `⌈225(n+1)/ε²⌉`
/// * subspace: `⌈36(n+1)·ln(2(n+1)/δ)/ε²⌉`
/// * srht: `⌈72(n+1)·ln(2(n+1)/δ)·ln(40(n+1)m)/ε²⌉`
pub fn coreset_size(method: CoresetMethod, m: usize, n: usize, eps: f64, delta: f64) -> usize {
    let n1 = (n + 1) as f64;
    let e2 = eps * eps;
    let r = match method {
        CoresetMethod::Barrier => 225.0 * n1 / e2,
        CoresetMethod::Subspace => 36.0 * n1 * (2.0 * n1 / delta).ln() / e2,
        CoresetMethod::Srht => 72.0 * n1 * (2.0 * n1 / delta).ln() * (40.0 * n1 * m as f64).ln() / e2,
    };
    // Guard against 225·5/0.25 landing a hair above an integer.
    (r - 1e-9 * r).ceil() as usize
}

/// Build a coreset whose constrained solution is `(1 + ε)`-competitive on the full problem
/// (per instance for barrier, with probability `1 − δ` for subspace and `0.95 − δ` for SRHT).
pub fn build_coreset(p: &RegressionProblem, opts: CoresetOptions) -> Result<Coreset> {
    let (m, n) = p.a.shape();
    let CoresetOptions { method, eps, delta, seed, width } = opts;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::arg(format!("eps must lie in (0, 1), got {eps}")));
    }
    let mut warnings = Vec::new();
    if eps > 1.0 / 3.0 + 1e-12 {
        warnings.push(format!("eps = {eps} is above 1/3, outside the guarantee's hypothesis"));
    }
    if method != CoresetMethod::Barrier && !(delta > 0.0 && delta < 1.0) {
        return Err(Error::arg(format!("delta must lie in (0, 1), got {delta}")));
    }
    let r = coreset_size(method, m, n, eps, delta);
    if r > m {
        if width == WidthPolicy::Strict {
            return Err(Error::Oversized { what: "coreset larger than data", requested: r, available: m });
        }
        warnings.push(format!("coreset size r = {r} exceeds the {m} rows"));
    }
    let y = hstack(&p.a, &Matrix::from_column_slice(m, 1, p.b.as_slice()))?;
    let fy = svd(&y)?;
    let uy = fy.u;
    let rank_y = fy.rank;

    let (plan, c, b_c, transform) = match method {
        CoresetMethod::Barrier => {
            if r <= rank_y {
                return Err(Error::arg(format!("coreset size r = {r} must exceed rank([A, b]) = {rank_y}")));
            }
            let plan = barrier_run(&uy, BarrierUpper::Spectral(&uy), r, WidthPolicy::AllowWider)?.plan;
            (plan.clone(), plan.apply_rows(&p.a)?, plan.apply_vector(&p.b)?, None)
        }
        CoresetMethod::Subspace => {
            let plan = subspace_sampling(&uy, 1.0, r, seed)?;
            (plan.clone(), plan.apply_rows(&p.a)?, plan.apply_vector(&p.b)?, None)
        }
        CoresetMethod::Srht => {
            let op = SketchOperator::srht(m, r, seed)?;
            let plan = op.plan()?;
            let mixed = op.mix(&y)?;
            let sampled = plan.apply_rows(&mixed)?;
            let c = sampled.columns(0, n).into_owned();
            let b_c = sampled.column(n).into_owned();
            (plan, c, b_c, Some(op))
        }
    };
    Ok(Coreset { plan, c, b_c, method, eps, delta, r, rank_y, transform, warnings })
}

/// Comparison of the coreset solution with the full solution.
#[derive(Debug, Clone, Serialize)]
pub struct CoresetEvaluation {
    /// `‖Ax̃ − b‖² / ‖Ax_opt − b‖²`; `+∞` when the full residual is zero and the coreset's is not.
    pub ratio: f64,
    pub full_residual_sq: f64,
    pub coreset_residual_sq: f64,
    pub x_full: Vec<f64>,
    pub x_coreset: Vec<f64>,
    pub rows: usize,
    pub distinct_rows: usize,
    pub full_seconds: f64,
    pub coreset_seconds: f64,
}

/// Solve the full and coreset problems under `p.constraint` and compare objectives.
pub fn evaluate_coreset(p: &RegressionProblem, c: &Coreset) -> Result<CoresetEvaluation> {
    if c.c.ncols() != p.a.ncols() || c.c.nrows() != c.b_c.len() {
        return Err(Error::dim("coreset does not match the problem"));
    }
    let t0 = Instant::now();
    let x_full = solve_ls(&p.a, &p.b, p.constraint)?;
    let full_seconds = t0.elapsed().as_secs_f64();
    let t1 = Instant::now();
    let x_coreset = solve_ls(&c.c, &c.b_c, p.constraint)?;
    let coreset_seconds = t1.elapsed().as_secs_f64();
    let full = p.objective(&x_full);
    let core = p.objective(&x_coreset);
    Ok(CoresetEvaluation {
        ratio: residual_ratio(core, full, p.b.norm_squared()),
        full_residual_sq: full,
        coreset_residual_sq: core,
        x_full: x_full.iter().copied().collect(),
        x_coreset: x_coreset.iter().copied().collect(),
        rows: c.plan.len(),
        distinct_rows: c.plan.distinct(),
        full_seconds,
        coreset_seconds,
    })
}

fn residual_ratio(coreset: f64, full: f64, scale: f64) -> f64 {
    let scale = scale.max(f64::MIN_POSITIVE);
    if full <= 1e-20 * scale {
        if coreset <= 1e-16 * scale {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        coreset / full
    }
}
