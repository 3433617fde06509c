// A matrix on which every choice of r columns is equally bad, checked by enumeration.

use itertools::Itertools;
use matsketch::cx::{lower_bound_instance, lower_bound_ratio, NormKind};
use matsketch::linalg::svd;
use matsketch::oracles::{subset_error, SubsetMode};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let n = 5;
    for alpha in [0.1, 1.0] {
        let a = lower_bound_instance(n, alpha)?;
        let tail = svd(&a)?.sigma(1);
        for r in 1..n {
            let mut worst: f64 = 0.0;
            for idx in (0..n).combinations(r) {
                let e = subset_error(&a, &idx, 1, NormKind::Spectral, SubsetMode::CcPlus)?;
                let ratio = (e / tail).powi(2);
                worst = worst.max((ratio / lower_bound_ratio(n, r, alpha) - 1.0).abs());
            }
            println!("alpha {alpha}, r {r}: ratio^2 = {:.6}, max relative deviation {worst:.1e}", lower_bound_ratio(n, r, alpha));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
