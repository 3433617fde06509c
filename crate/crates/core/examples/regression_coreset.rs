// Solve least squares (and nonnegative least squares) on a small reweighted subset of rows.

use matsketch::regression::{build_coreset, evaluate_coreset, Constraint, CoresetMethod, CoresetOptions, RegressionProblem};
use matsketch::synthetic::regression;
use matsketch::WidthPolicy;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (a, b) = regression(6000, 3, 0.5, 3);
    for constraint in [Constraint::None, Constraint::Nonnegative] {
        let problem = RegressionProblem::new(a.clone(), b.clone(), constraint)?;
        for method in [CoresetMethod::Barrier, CoresetMethod::Subspace, CoresetMethod::Srht] {
            let opts = CoresetOptions::new(method, 0.5).delta(0.1).seed(9).width(WidthPolicy::AllowWider);
            let core = build_coreset(&problem, opts)?;
            let eval = evaluate_coreset(&problem, &core)?;
            println!(
                "{constraint:?}/{method:?}: r = {:>6}, {:>5} distinct rows, residual ratio {:.5}",
                core.r, eval.distinct_rows, eval.ratio
            );
            if method == CoresetMethod::Barrier {
                assert!(eval.ratio <= 1.5 + 1e-9);
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
