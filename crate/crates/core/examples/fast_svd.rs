// Randomized approximations of the top right singular subspace.

use matsketch::approx_svd::{fast_frobenius_svd, fast_spectral_svd, srht_lowrank, srht_lowrank_size};
use matsketch::linalg::{spectral_norm, svd, Matrix};
use matsketch::synthetic::low_rank_plus_noise;
use matsketch::WidthPolicy;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = Matrix::from_diagonal(&matsketch::Vector::from_fn(10, |i, _| (10 - i) as f64));
    let f = svd(&a)?;

    let trials = 50;
    let mut frob = 0.0;
    let mut spec = 0.0;
    for seed in 0..trials {
        frob += fast_frobenius_svd(&a, 3, 0.5, seed)?.residual(&a).norm_squared();
        spec += spectral_norm(&fast_spectral_svd(&a, 2, 1.0, seed)?.residual(&a))?;
    }
    let n = trials as f64;
    println!(
        "frobenius: mean ||E||_F^2 = {:.3} vs (1 + eps) tail = {:.3}",
        frob / n,
        1.5 * f.tail_frobenius(3).powi(2)
    );
    println!("spectral:  mean ||E||_2   = {:.3} vs (sqrt2 + eps) sigma_3 = {:.3}", spec / n, (2f64.sqrt() + 1.0) * f.sigma(2));

    let b = low_rank_plus_noise(40, 64, 2, 0.05, 1);
    let r = srht_lowrank_size(2, 64, 0.45);
    let approx = srht_lowrank(&b, 2, 0.45, 3, WidthPolicy::AllowWider)?;
    let fb = svd(&b)?;
    println!(
        "srht: sketch size {r}, ||A - X||_F^2 / ||A - A_k||_F^2 = {:.4}",
        (&b - approx).norm_squared() / fb.tail_frobenius(2).powi(2)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
