// Deterministic dual-set sparsification: pick r weighted rows of two orthonormal
// families so the first keeps its smallest singular value and the second stays bounded.

use matsketch::linalg::{orth, singular_values, spectral_norm};
use matsketch::samplers::{barrier_run, BarrierUpper};
use matsketch::sketch::gaussian_matrix;
use matsketch::WidthPolicy;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (n, k, ell, r) = (200, 3, 5, 12);
    let v = orth(&gaussian_matrix(n, k, 1))?;
    let u = orth(&gaussian_matrix(n, ell, 2))?;

    let run = barrier_run(&v, BarrierUpper::Spectral(&u), r, WidthPolicy::Strict)?;
    let vs = run.plan.apply_rows(&v)?;
    let us = run.plan.apply_rows(&u)?;
    let sigma_k = *singular_values(&vs)?.last().unwrap();
    let top = spectral_norm(&us)?;
    let (kf, lf, rf) = (k as f64, ell as f64, r as f64);

    println!("picked {} distinct rows in {} steps", run.plan.distinct(), r);
    println!("sigma_k(V^T Omega S) = {sigma_k:.4} >= {:.4}", 1.0 - (kf / rf).sqrt());
    println!("||U^T Omega S||_2    = {top:.4} <= {:.4}", 1.0 + (lf / rf).sqrt());
    for s in run.trace.states.iter().step_by(4) {
        println!(
            "  tau {:>2}: L = {:>7.3}  lambda_min = {:>7.3}  U = {:>7.3}  lambda_max = {:>7.3}",
            s.tau, s.lower, s.lambda_min, s.upper, s.upper_extreme
        );
    }
    assert!(sigma_k >= 1.0 - (kf / rf).sqrt() - 1e-9);
    assert!(top <= 1.0 + (lf / rf).sqrt() + 1e-9);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
