//! Least-squares solvers: minimum-norm unconstrained and Lawson–Hanson nonnegative.

use crate::error::{Error, Result};
use crate::linalg::{pseudo_inverse, select_columns, Matrix, Vector};

/// Minimum-norm solution of `min ‖Cx − b‖₂`.
pub fn least_squares(c: &Matrix, b: &Vector) -> Result<Vector> {
    check_dims(c, b)?;
    Ok(pseudo_inverse(c)? * b)
}

fn check_dims(c: &Matrix, b: &Vector) -> Result<()> {
    if c.nrows() == 0 || c.ncols() == 0 {
        return Err(Error::arg("least squares with an empty matrix"));
    }
    if c.nrows() != b.len() {
        return Err(Error::dim(format!("C has {} rows but b has length {}", c.nrows(), b.len())));
    }
    Ok(())
}

fn kkt_tol(c: &Matrix, b: &Vector) -> f64 {
    1e-10 * c.norm() * (b.norm() + c.norm()).max(1e-300)
}

/// `min ‖Cx − b‖₂` subject to `x ≥ 0`, by the Lawson–Hanson active-set method.
///
/// Fails with a numeric error after `3·n` outer cycles.
pub fn nnls(c: &Matrix, b: &Vector) -> Result<Vector> {
    check_dims(c, b)?;
    let n = c.ncols();
    let tol = kkt_tol(c, b);
    let mut x = Vector::zeros(n);
    let mut passive = vec![false; n];
    let mut w = c.transpose() * (b - c * &x);
    let cap = 3 * n;
    let mut cycles = 0;
    loop {
        let candidate = (0..n)
            .filter(|&j| !passive[j] && w[j] > tol)
            .max_by(|&i, &j| w[i].total_cmp(&w[j]).then(j.cmp(&i)));
        let Some(j) = candidate else { break };
        cycles += 1;
        if cycles > cap {
            return Err(Error::Numeric(format!("NNLS did not converge within {cap} active-set cycles")));
        }
        passive[j] = true;
        loop {
            let idx: Vec<usize> = (0..n).filter(|&i| passive[i]).collect();
            let zp = pseudo_inverse(&select_columns(c, &idx))? * b;
            if zp.iter().all(|&v| v > 0.0) {
                x.fill(0.0);
                for (t, &i) in idx.iter().enumerate() {
                    x[i] = zp[t];
                }
                break;
            }
            // Step toward z until the first passive variable hits zero.
            let mut step = (f64::INFINITY, usize::MAX);
            for (t, &i) in idx.iter().enumerate() {
                if zp[t] <= 0.0 {
                    let denom = x[i] - zp[t];
                    let a = if denom > 0.0 { x[i] / denom } else { 0.0 };
                    if a < step.0 {
                        step = (a, i);
                    }
                }
            }
            for (t, &i) in idx.iter().enumerate() {
                x[i] += step.0 * (zp[t] - x[i]);
            }
            x[step.1] = 0.0;
            let floor = 1e-15 * x.amax();
            for &i in &idx {
                if x[i] <= floor {
                    x[i] = 0.0;
                    passive[i] = false;
                }
            }
            if !passive.iter().any(|&p| p) {
                break;
            }
        }
        w = c.transpose() * (b - c * &x);
    }
    Ok(x)
}

/// Karush–Kuhn–Tucker check for a nonnegative least-squares solution.
///
/// Requires `x ≥ 0`, `Cᵀ(b − Cx) = 0` on the positive entries and `Cᵀ(b − Cx) ≤ 0` on the
/// zero entries, all up to `1e-8` relative tolerance.
pub fn nnls_kkt_holds(c: &Matrix, b: &Vector, x: &Vector) -> bool {
    let g = c.transpose() * (b - c * x);
    let scale = c.norm() * (b.norm() + c.norm() * x.norm()).max(1e-300);
    let tol = 1e-8 * scale;
    x.iter().zip(g.iter()).all(|(&xi, &gi)| {
        xi >= 0.0 && if xi > 0.0 { gi.abs() <= tol } else { gi <= tol }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sketch::gaussian_matrix;

    #[test]
    fn identity_cases() {
        let c = Matrix::identity(2, 2);
        let b = Vector::from_vec(vec![1.0, -1.0]);
        assert_eq!(least_squares(&c, &b).unwrap(), b);
        let x = nnls(&c, &b).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-14 && x[1] == 0.0);
    }

    #[test]
    fn nnls_satisfies_kkt_and_dominates() {
        for seed in 0..20 {
            let c = gaussian_matrix(200, 5, seed);
            let b = gaussian_matrix(200, 1, seed + 100).column(0).into_owned();
            let x = nnls(&c, &b).unwrap();
            assert!(nnls_kkt_holds(&c, &b, &x), "seed {seed}");
            let free = least_squares(&c, &b).unwrap();
            let f_nn = (&c * &x - &b).norm_squared();
            let f_free = (&c * &free - &b).norm_squared();
            assert!(f_nn >= f_free - 1e-9 * f_free);
            if free.iter().all(|&v| v >= 0.0) {
                assert!((f_nn - f_free).abs() <= 1e-9 * f_free);
            }
        }
    }

    #[test]
    fn dimension_mismatch() {
        let c = Matrix::identity(3, 2);
        assert!(nnls(&c, &Vector::zeros(2)).is_err());
        assert!(least_squares(&Matrix::zeros(0, 0), &Vector::zeros(0)).is_err());
    }
}
