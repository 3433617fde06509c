// Low-rank approximation from a few actual columns, in every available mode.

use matsketch::cx::{cx_frobenius, cx_spectral, CxResult, FrobeniusMode, SpectralMode};
use matsketch::synthetic::low_rank_plus_noise;

fn show(name: &str, out: &CxResult) {
    println!(
        "{name:<26} cols {:>2}  error/baseline {:.3}  bound {:.3} ({}, {:?})  ok {}",
        out.plan.distinct(),
        out.ratio(),
        out.bound.constant,
        out.bound.formula,
        out.bound.guarantee,
        out.satisfied()
    );
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = low_rank_plus_noise(100, 80, 2, 0.1, 7);
    let (k, r) = (2, 8);

    let det = cx_frobenius(&a, k, r, FrobeniusMode::Deterministic, 0)?;
    show("frobenius/deterministic", &det);
    assert!(det.satisfied());
    show("frobenius/fast", &cx_frobenius(&a, k, r, FrobeniusMode::Fast, 3)?);
    show("frobenius/relative r=40", &cx_frobenius(&a, k, 40, FrobeniusMode::Relative, 3)?);

    let spec = cx_spectral(&a, k, r, SpectralMode::Deterministic, 0)?;
    show("spectral/deterministic", &spec);
    assert!(spec.satisfied());
    show("spectral/fast", &cx_spectral(&a, k, r, SpectralMode::Fast, 3)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
