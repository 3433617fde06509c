//! Seeded synthetic inputs for examples, tests and benchmarks.

use std::fmt;
use std::str::FromStr;

use crate::cx::lower_bound_instance;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::rng::derive_seed;
use crate::sketch::gaussian_matrix;

/// `G₁G₂ + noise·G₃` with `G₁` m×k, `G₂` k×n and `G₃` m×n standard Gaussian.
pub fn low_rank_plus_noise(m: usize, n: usize, k: usize, noise: f64, seed: u64) -> Matrix {
    let left = gaussian_matrix(m, k, derive_seed(seed, 0));
    let right = gaussian_matrix(k, n, derive_seed(seed, 1));
    left * right + gaussian_matrix(m, n, derive_seed(seed, 2)) * noise
}

/// Points drawn around `k` planted centers.
#[derive(Debug, Clone)]
pub struct Blobs {
    /// m×n data, one point per row.
    pub points: Matrix,
    /// Planted cluster of each point (`i mod k`).
    pub labels: Vec<usize>,
    /// Number of leading features that carry the cluster signal.
    pub informative: usize,
}

/// `m` points in `n` dimensions around `k` centers placed at distance `sep` from the origin
/// along random directions of the first `min(n, 10)` features, plus unit Gaussian noise in
/// every feature.
pub fn blobs(m: usize, n: usize, k: usize, sep: f64, seed: u64) -> Result<Blobs> {
    if k == 0 || k > m || n == 0 {
        return Err(Error::arg(format!("need 1 <= k <= m and n >= 1, got m = {m}, n = {n}, k = {k}")));
    }
    let informative = n.min(10);
    let dirs = gaussian_matrix(k, informative, derive_seed(seed, 0));
    let mut points = gaussian_matrix(m, n, derive_seed(seed, 1));
    let labels: Vec<usize> = (0..m).map(|i| i % k).collect();
    for (i, &l) in labels.iter().enumerate() {
        let norm = dirs.row(l).norm().max(f64::MIN_POSITIVE);
        for j in 0..informative {
            points[(i, j)] += sep * dirs[(l, j)] / norm;
        }
    }
    Ok(Blobs { points, labels, informative })
}

/// A full-rank regression problem `b = Ax* + noise·g` with Gaussian `A` (m×n) and `x*`.
pub fn regression(m: usize, n: usize, noise: f64, seed: u64) -> (Matrix, Vector) {
    let a = gaussian_matrix(m, n, derive_seed(seed, 0));
    let x = gaussian_matrix(n, 1, derive_seed(seed, 1)).column(0).into_owned();
    let g = gaussian_matrix(m, 1, derive_seed(seed, 2)).column(0).into_owned();
    let b = &a * x + g * noise;
    (a, b)
}

/// A parsed `--synthetic` specification.
#[derive(Debug, Clone, PartialEq)]
pub enum SyntheticSpec {
    LowRank { m: usize, n: usize, k: usize, noise: f64 },
    Blobs { m: usize, n: usize, k: usize, sep: f64 },
    LowerBound { n: usize, alpha: f64 },
    Regression { m: usize, n: usize, noise: f64 },
}

impl SyntheticSpec {
    /// Generate the data matrix. Regression problems are returned as `[A | b]`.
    pub fn generate(&self, seed: u64) -> Result<Matrix> {
        match *self {
            SyntheticSpec::LowRank { m, n, k, noise } => Ok(low_rank_plus_noise(m, n, k, noise, seed)),
            SyntheticSpec::Blobs { m, n, k, sep } => Ok(blobs(m, n, k, sep, seed)?.points),
            SyntheticSpec::LowerBound { n, alpha } => lower_bound_instance(n, alpha),
            SyntheticSpec::Regression { m, n, noise } => {
                let (a, b) = regression(m, n, noise, seed);
                let mut ab = a.insert_column(n, 0.0);
                ab.set_column(n, &b);
                Ok(ab)
            }
        }
    }

    /// Whether the generated data depends on the seed.
    pub fn is_random(&self) -> bool {
        !matches!(self, SyntheticSpec::LowerBound { .. })
    }
}

impl fmt::Display for SyntheticSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SyntheticSpec::LowRank { m, n, k, noise } => write!(f, "lowrank:{m},{n},{k},{noise}"),
            SyntheticSpec::Blobs { m, n, k, sep } => write!(f, "blobs:{m},{n},{k},{sep}"),
            SyntheticSpec::LowerBound { n, alpha } => write!(f, "lowerbound:{n},{alpha}"),
            SyntheticSpec::Regression { m, n, noise } => write!(f, "regression:{m},{n},{noise}"),
        }
    }
}

impl FromStr for SyntheticSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::arg(format!("synthetic spec {s:?} must look like kind:a,b,...")))?;
        let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
        let want = |count: usize| -> Result<()> {
            if parts.len() != count {
                return Err(Error::arg(format!("{kind} takes {count} parameters, got {}", parts.len())));
            }
            Ok(())
        };
        let int = |i: usize| -> Result<usize> {
            parts[i].parse().map_err(|_| Error::arg(format!("{:?} is not a nonnegative integer", parts[i])))
        };
        let real = |i: usize| -> Result<f64> {
            parts[i].parse().map_err(|_| Error::arg(format!("{:?} is not a number", parts[i])))
        };
        match kind {
            "lowrank" => {
                want(4)?;
                Ok(SyntheticSpec::LowRank { m: int(0)?, n: int(1)?, k: int(2)?, noise: real(3)? })
            }
            "blobs" => {
                want(4)?;
                Ok(SyntheticSpec::Blobs { m: int(0)?, n: int(1)?, k: int(2)?, sep: real(3)? })
            }
            "lowerbound" => {
                want(2)?;
                Ok(SyntheticSpec::LowerBound { n: int(0)?, alpha: real(1)? })
            }
            "regression" => {
                want(3)?;
                Ok(SyntheticSpec::Regression { m: int(0)?, n: int(1)?, noise: real(2)? })
            }
            other => Err(Error::arg(format!("unknown synthetic kind {other:?}"))),
        }
    }
}
