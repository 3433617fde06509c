//! Random projections: Gaussian, rescaled sign, and the subsampled randomized Hadamard transform.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Pick, SamplingPlan, Vector};
use crate::rng::{stream, Normals, StreamKind};

/// Which random operator a [`SketchOperator`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SketchKind {
    Gaussian,
    Sign,
    SrhtRows,
}

/// `rows × cols` matrix of i.i.d. standard normals; row `i` comes from its own stream.
pub fn gaussian_matrix(rows: usize, cols: usize, seed: u64) -> Matrix {
    let mut out = Matrix::zeros(rows, cols);
    for i in 0..rows {
        let mut g = Normals::new(stream(seed, StreamKind::Gaussian, i as u64));
        for j in 0..cols {
            out[(i, j)] = g.next();
        }
    }
    out
}

/// `rows × cols` matrix with entries `±1/√cols`, equiprobable.
pub fn sign_matrix(rows: usize, cols: usize, seed: u64) -> Matrix {
    let v = 1.0 / (cols as f64).sqrt();
    let mut out = Matrix::zeros(rows, cols);
    for i in 0..rows {
        let mut rng = stream(seed, StreamKind::Sign, i as u64);
        for j in 0..cols {
            out[(i, j)] = if rng.gen::<bool>() { v } else { -v };
        }
    }
    out
}

/// `A·R` with `R` an `n × r` standard Gaussian matrix.
pub fn gaussian_sketch(a: &Matrix, r: usize, seed: u64) -> Result<Matrix> {
    if r == 0 {
        return Err(Error::arg("sketch size r must be at least 1"));
    }
    Ok(a * gaussian_matrix(a.ncols(), r, seed))
}

/// `A·R` with `R` an `n × r` rescaled sign matrix.
pub fn sign_sketch(a: &Matrix, r: usize, seed: u64) -> Result<Matrix> {
    if r == 0 {
        return Err(Error::arg("sketch size r must be at least 1"));
    }
    Ok(a * sign_matrix(a.ncols(), r, seed))
}

/// In-place normalized Walsh–Hadamard transform; `x.len()` must be a power of two.
pub fn fwht(x: &mut [f64]) {
    let n = x.len();
    debug_assert!(n.is_power_of_two());
    let mut h = 1;
    while h < n {
        for start in (0..n).step_by(2 * h) {
            for i in start..start + h {
                let (a, b) = (x[i], x[i + h]);
                x[i] = a + b;
                x[i + h] = a - b;
            }
        }
        h *= 2;
    }
    let s = 1.0 / (n as f64).sqrt();
    for v in x.iter_mut() {
        *v *= s;
    }
}

/// A concrete random operator with its seed and, for SRHT, its drawn signs and rows.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SketchOperator {
    pub kind: SketchKind,
    pub input_dim: usize,
    pub output_dim: usize,
    pub seed: u64,
    /// SRHT only: `±1` per padded input row.
    pub signs: Vec<f64>,
    /// SRHT only: sampled rows of the mixed input, with replacement.
    pub rows: Vec<usize>,
    /// SRHT only: `√(m_pad / r)`.
    pub scale: f64,
}

impl SketchOperator {
    pub fn gaussian(input_dim: usize, output_dim: usize, seed: u64) -> Result<Self> {
        Self::dense(SketchKind::Gaussian, input_dim, output_dim, seed)
    }

    pub fn sign(input_dim: usize, output_dim: usize, seed: u64) -> Result<Self> {
        Self::dense(SketchKind::Sign, input_dim, output_dim, seed)
    }

    fn dense(kind: SketchKind, input_dim: usize, output_dim: usize, seed: u64) -> Result<Self> {
        if output_dim == 0 {
            return Err(Error::arg("sketch size r must be at least 1"));
        }
        Ok(SketchOperator { kind, input_dim, output_dim, seed, signs: Vec::new(), rows: Vec::new(), scale: 1.0 })
    }

    /// SRHT over `input_dim` rows producing `output_dim` rows. No bound on `output_dim`
    /// is enforced here; sampling is with replacement.
    pub fn srht(input_dim: usize, output_dim: usize, seed: u64) -> Result<Self> {
        if input_dim == 0 {
            return Err(Error::arg("SRHT input dimension must be positive"));
        }
        if output_dim == 0 {
            return Err(Error::arg("sketch size r must be at least 1"));
        }
        let m_pad = input_dim.next_power_of_two();
        let mut sign_rng = stream(seed, StreamKind::SrhtSigns, 0);
        let signs = (0..m_pad).map(|_| if sign_rng.gen::<bool>() { 1.0 } else { -1.0 }).collect();
        let mut row_rng = stream(seed, StreamKind::SrhtRows, 0);
        let rows = (0..output_dim).map(|_| row_rng.gen_range(0..m_pad)).collect();
        Ok(SketchOperator {
            kind: SketchKind::SrhtRows,
            input_dim,
            output_dim,
            seed,
            signs,
            rows,
            scale: (m_pad as f64 / output_dim as f64).sqrt(),
        })
    }

    /// Padded dimension `2^⌈log₂ m⌉` (equal to `input_dim` for dense kinds).
    pub fn padded_dim(&self) -> usize {
        match self.kind {
            SketchKind::SrhtRows => self.input_dim.next_power_of_two(),
            _ => self.input_dim,
        }
    }

    /// The padded rows sampled by an SRHT, as a plan over the padded dimension.
    pub fn plan(&self) -> Result<SamplingPlan> {
        let picks = self.rows.iter().map(|&index| Pick { index, weight: self.scale }).collect();
        SamplingPlan::new(self.padded_dim(), picks, true)
    }

    /// Dense kinds: `A·R` (A has `input_dim` columns). SRHT: `Θ A` (A has `input_dim` rows).
    pub fn apply(&self, a: &Matrix) -> Result<Matrix> {
        match self.kind {
            SketchKind::Gaussian => self.check_cols(a).map(|_| a * gaussian_matrix(self.input_dim, self.output_dim, self.seed)),
            SketchKind::Sign => self.check_cols(a).map(|_| a * sign_matrix(self.input_dim, self.output_dim, self.seed)),
            SketchKind::SrhtRows => {
                let mixed = self.mix(a)?;
                let mut out = Matrix::zeros(self.output_dim, a.ncols());
                for (i, &row) in self.rows.iter().enumerate() {
                    for j in 0..a.ncols() {
                        out[(i, j)] = self.scale * mixed[(row, j)];
                    }
                }
                Ok(out)
            }
        }
    }

    /// SRHT only: the unsampled orthogonal map `H D` applied to the zero-padded rows of `a`.
    pub fn mix(&self, a: &Matrix) -> Result<Matrix> {
        if self.kind != SketchKind::SrhtRows {
            return Err(Error::arg("mix is defined for SRHT operators only"));
        }
        if a.nrows() != self.input_dim {
            return Err(Error::dim(format!(
                "SRHT over {} rows applied to a matrix with {} rows",
                self.input_dim,
                a.nrows()
            )));
        }
        let m_pad = self.padded_dim();
        let mut out = Matrix::zeros(m_pad, a.ncols());
        let mut buf = vec![0.0; m_pad];
        for j in 0..a.ncols() {
            buf.iter_mut().for_each(|v| *v = 0.0);
            for i in 0..self.input_dim {
                buf[i] = self.signs[i] * a[(i, j)];
            }
            fwht(&mut buf);
            out.column_mut(j).copy_from_slice(&buf);
        }
        Ok(out)
    }

    fn check_cols(&self, a: &Matrix) -> Result<()> {
        if a.ncols() != self.input_dim {
            return Err(Error::dim(format!(
                "sketch over {} columns applied to a matrix with {} columns",
                self.input_dim,
                a.ncols()
            )));
        }
        Ok(())
    }
}

/// Output of [`srht_rows`].
#[derive(Debug, Clone)]
pub struct SrhtRows {
    /// `r × n` sketched rows of `A`.
    pub a: Matrix,
    /// Sketched right-hand side when one was supplied.
    pub b: Option<Vector>,
    /// Sampled rows of the padded, mixed input with weight `√(m_pad/r)`.
    pub plan: SamplingPlan,
    pub operator: SketchOperator,
}

/// Row sketch `Θ[A, b]` with an SRHT of `r` rows; requires `r ≤ m_pad`.
pub fn srht_rows(a: &Matrix, b: Option<&Vector>, r: usize, seed: u64) -> Result<SrhtRows> {
    if r == 0 {
        return Err(Error::arg("sketch size r must be at least 1"));
    }
    let m_pad = a.nrows().max(1).next_power_of_two();
    if r > m_pad {
        return Err(Error::arg(format!("SRHT size r = {r} exceeds the padded dimension {m_pad}")));
    }
    srht_rows_unchecked(a, b, r, seed)
}

/// As [`srht_rows`] without the `r ≤ m_pad` restriction.
pub(crate) fn srht_rows_unchecked(a: &Matrix, b: Option<&Vector>, r: usize, seed: u64) -> Result<SrhtRows> {
    let op = SketchOperator::srht(a.nrows(), r, seed)?;
    if let Some(b) = b {
        if b.len() != a.nrows() {
            return Err(Error::dim(format!("b has length {} but A has {} rows", b.len(), a.nrows())));
        }
    }
    let sa = op.apply(a)?;
    let sb = match b {
        Some(b) => Some(op.apply(&Matrix::from_column_slice(b.len(), 1, b.as_slice()))?.column(0).into_owned()),
        None => None,
    };
    let plan = op.plan()?;
    Ok(SrhtRows { a: sa, b: sb, plan, operator: op })
}
