// Exactly-k column selection, compared with the exhaustive optimum, and an
// interpolative decomposition built from the same machinery.

use matsketch::cx::{cssp, interpolative_decomposition, CsspMode, NormKind};
use matsketch::linalg::singular_values;
use matsketch::oracles::{best_subset_exhaustive, SubsetMode};
use matsketch::synthetic::low_rank_plus_noise;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = low_rank_plus_noise(60, 12, 2, 0.1, 5);
    let k = 2;

    for (mode, norm) in [
        (CsspMode::Spectral, NormKind::Spectral),
        (CsspMode::Frobenius, NormKind::Frobenius),
        (CsspMode::TwoStage, NormKind::Frobenius),
    ] {
        let out = cssp(&a, k, mode, 0.1, 11)?;
        let best = best_subset_exhaustive(&a, k, k, norm, SubsetMode::CcPlus)?;
        println!(
            "{mode:?}: columns {:?} error {:.4}; best {:?} error {:.4}; bound {:.2} x baseline",
            out.plan.indices(),
            out.error(),
            best.indices,
            best.error,
            out.bound.constant
        );
        assert!(best.error <= out.error() + 1e-10);
    }

    let id = interpolative_decomposition(&a, 3, 4)?;
    let resid = (&a - &id.c * &id.x).norm() / a.norm();
    let smin = *singular_values(&id.x)?.last().unwrap();
    println!(
        "interpolative: columns {:?}, relative error {resid:.2e}, max |X| {:.3}, sigma_min(X) {smin:.3}",
        id.indices,
        id.x.amax()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
