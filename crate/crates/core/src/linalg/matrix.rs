//! Dense matrix helpers on top of `nalgebra`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Dense real matrix. Entries are stored column-major by `nalgebra`.
pub type Matrix = DMatrix<f64>;
/// Dense real column vector.
pub type Vector = DVector<f64>;

/// Build a matrix from row-major data, rejecting non-finite entries.
pub fn from_row_major(rows: usize, cols: usize, data: &[f64]) -> Result<Matrix> {
    if data.len() != rows * cols {
        return Err(Error::dim(format!(
            "{} values supplied for a {rows}x{cols} matrix",
            data.len()
        )));
    }
    let m = Matrix::from_row_slice(rows, cols, data);
    ensure_finite(&m, "matrix")?;
    Ok(m)
}

/// Entries in row-major order.
pub fn to_row_major(a: &Matrix) -> Vec<f64> {
    let mut out = Vec::with_capacity(a.len());
    for i in 0..a.nrows() {
        out.extend(a.row(i).iter());
    }
    out
}

/// Error unless every entry is finite.
pub fn ensure_finite(a: &Matrix, what: &str) -> Result<()> {
    if let Some(pos) = a.iter().position(|x| !x.is_finite()) {
        let (i, j) = (pos % a.nrows().max(1), pos / a.nrows().max(1));
        return Err(Error::arg(format!("{what} has a non-finite entry at ({i}, {j})")));
    }
    Ok(())
}

/// Error unless the matrix has at least one row and one column.
pub fn ensure_nonempty(a: &Matrix, what: &str) -> Result<()> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Err(Error::arg(format!("{what} is empty ({}x{})", a.nrows(), a.ncols())));
    }
    Ok(())
}

/// Frobenius norm.
pub fn frobenius_norm(a: &Matrix) -> f64 {
    a.norm()
}

/// Squared Euclidean norm of each column.
pub fn column_norms_sq(a: &Matrix) -> Vec<f64> {
    a.column_iter().map(|c| c.norm_squared()).collect()
}

/// Squared Euclidean norm of each row.
pub fn row_norms_sq(a: &Matrix) -> Vec<f64> {
    let mut out = vec![0.0; a.nrows()];
    for col in a.column_iter() {
        for (o, x) in out.iter_mut().zip(col.iter()) {
            *o += x * x;
        }
    }
    out
}

/// Largest absolute deviation of `VᵀV` from the identity.
pub fn orthonormality_defect(v: &Matrix) -> f64 {
    let g = v.transpose() * v;
    let mut worst: f64 = 0.0;
    for i in 0..g.nrows() {
        for j in 0..g.ncols() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g[(i, j)] - target).abs());
        }
    }
    worst
}

/// Columns of `a` at the given indices, in order.
pub fn select_columns(a: &Matrix, idx: &[usize]) -> Matrix {
    Matrix::from_fn(a.nrows(), idx.len(), |i, j| a[(i, idx[j])])
}

/// Rows of `a` at the given indices, in order.
pub fn select_rows(a: &Matrix, idx: &[usize]) -> Matrix {
    Matrix::from_fn(idx.len(), a.ncols(), |i, j| a[(idx[i], j)])
}

/// `[a, b]` side by side.
pub fn hstack(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.nrows() != b.nrows() {
        return Err(Error::dim(format!(
            "cannot place {} rows next to {} rows",
            a.nrows(),
            b.nrows()
        )));
    }
    let mut out = Matrix::zeros(a.nrows(), a.ncols() + b.ncols());
    out.columns_mut(0, a.ncols()).copy_from(a);
    out.columns_mut(a.ncols(), b.ncols()).copy_from(b);
    Ok(out)
}
