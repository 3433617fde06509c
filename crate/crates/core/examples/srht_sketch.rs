// Random sign flips plus a Walsh-Hadamard transform spread leverage evenly across rows,
// after which uniform row sampling preserves the column space.

use matsketch::linalg::{orth, row_norms_sq, singular_values, Matrix};
use matsketch::sketch::{srht_rows, SketchOperator};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (m, n) = (1024, 4);
    // Coherent input: all the mass sits in the first n rows.
    let mut a = Matrix::zeros(m, n);
    for j in 0..n {
        a[(j, j)] = 1.0;
    }
    let op = SketchOperator::srht(m, 64, 5)?;
    let mixed = op.mix(&a)?;
    let before = row_norms_sq(&orth(&a)?).into_iter().fold(0.0, f64::max);
    let after = row_norms_sq(&orth(&mixed)?).into_iter().fold(0.0, f64::max);
    println!("max leverage before mixing {before:.3}, after {after:.4} (uniform would be {:.4})", n as f64 / m as f64);

    let sketch = srht_rows(&a, None, 64, 5)?;
    let sv = singular_values(&sketch.a)?;
    println!("singular values of the 64-row sketch: {:?}", sv.iter().map(|s| format!("{s:.3}")).collect::<Vec<_>>());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
