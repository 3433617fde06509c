#![allow(dead_code)]

use matsketch::linalg::{orth, Matrix};
use matsketch::report::sha256_hex;
use matsketch::sketch::gaussian_matrix;

/// Orthonormal n×k matrix from a seeded Gaussian.
pub fn orthonormal(n: usize, k: usize, seed: u64) -> Matrix {
    orth(&gaussian_matrix(n, k, seed)).expect("Gaussian matrices have full rank")
}

/// `U diag(s) Vᵀ` with random orthonormal factors.
pub fn with_spectrum(m: usize, n: usize, s: &[f64], seed: u64) -> Matrix {
    let p = s.len();
    let u = orthonormal(m, p, seed);
    let v = orthonormal(n, p, seed.wrapping_add(7_919));
    let mut us = u;
    for (j, &sj) in s.iter().enumerate() {
        us.column_mut(j).scale_mut(sj);
    }
    us * v.transpose()
}

/// A decaying random spectrum of length p.
pub fn random_spectrum(p: usize, seed: u64) -> Vec<f64> {
    let g = gaussian_matrix(p, 1, seed);
    let mut s: Vec<f64> = (0..p).map(|i| 10.0 * (-0.25 * i as f64).exp() * (1.0 + 0.3 * g[(i, 0)].abs())).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// SHA-256 over the exact bit patterns of a matrix and its shape.
pub fn matrix_hash(a: &Matrix) -> String {
    let mut bytes = Vec::with_capacity(16 + 8 * a.len());
    bytes.extend_from_slice(&(a.nrows() as u64).to_le_bytes());
    bytes.extend_from_slice(&(a.ncols() as u64).to_le_bytes());
    for v in a.iter() {
        bytes.extend_from_slice(&v.to_bits().to_le_bytes());
    }
    sha256_hex(&bytes)
}

pub fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}
