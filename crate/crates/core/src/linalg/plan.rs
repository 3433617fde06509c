//! Sampling plans: the sampling matrix Ω and rescaling S stored together.

use serde::{Deserialize, Serialize};

use super::matrix::{Matrix, Vector};
use crate::error::{Error, Result};

/// One selected index and its rescaling weight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pick {
    pub index: usize,
    pub weight: f64,
}

/// Ordered picks from `0..source_dim`. Applying the plan to the columns of `A` gives `AΩS`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingPlan {
    pub source_dim: usize,
    pub picks: Vec<Pick>,
    pub with_replacement: bool,
}

impl SamplingPlan {
    /// Validated plan: positive finite weights, indices in range, distinct unless sampled with replacement.
    pub fn new(source_dim: usize, picks: Vec<Pick>, with_replacement: bool) -> Result<Self> {
        for p in &picks {
            if p.index >= source_dim {
                return Err(Error::arg(format!("pick index {} out of range 0..{source_dim}", p.index)));
            }
            if !(p.weight > 0.0 && p.weight.is_finite()) {
                return Err(Error::arg(format!("pick weight {} is not strictly positive", p.weight)));
            }
        }
        if !with_replacement {
            let mut seen = vec![false; source_dim];
            for p in &picks {
                if std::mem::replace(&mut seen[p.index], true) {
                    return Err(Error::arg(format!("index {} picked twice in a plan without replacement", p.index)));
                }
            }
        }
        Ok(SamplingPlan { source_dim, picks, with_replacement })
    }

    /// Plan with unit weights.
    pub fn unweighted(source_dim: usize, indices: &[usize], with_replacement: bool) -> Result<Self> {
        let picks = indices.iter().map(|&index| Pick { index, weight: 1.0 }).collect();
        Self::new(source_dim, picks, with_replacement)
    }

    /// Number of picks (r).
    pub fn len(&self) -> usize {
        self.picks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.picks.is_empty()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.picks.iter().map(|p| p.index).collect()
    }

    pub fn weights(&self) -> Vec<f64> {
        self.picks.iter().map(|p| p.weight).collect()
    }

    /// Number of distinct indices.
    pub fn distinct(&self) -> usize {
        let mut idx = self.indices();
        idx.sort_unstable();
        idx.dedup();
        idx.len()
    }

    /// Same indices, all weights set to one.
    pub fn with_unit_weights(&self) -> SamplingPlan {
        SamplingPlan {
            source_dim: self.source_dim,
            picks: self.picks.iter().map(|p| Pick { index: p.index, weight: 1.0 }).collect(),
            with_replacement: self.with_replacement,
        }
    }

    /// Concatenation `[self, other]` over the same source.
    pub fn concat(&self, other: &SamplingPlan) -> Result<SamplingPlan> {
        if self.source_dim != other.source_dim {
            return Err(Error::dim("plans over different sources"));
        }
        let mut picks = self.picks.clone();
        picks.extend_from_slice(&other.picks);
        SamplingPlan::new(self.source_dim, picks, true)
    }

    /// `AΩS`: column j is `weight_j · A[:, index_j]`.
    pub fn apply_columns(&self, a: &Matrix) -> Result<Matrix> {
        if a.ncols() != self.source_dim {
            return Err(Error::arg(format!(
                "plan over {} columns applied to a matrix with {} columns",
                self.source_dim,
                a.ncols()
            )));
        }
        let mut out = Matrix::zeros(a.nrows(), self.picks.len());
        for (j, p) in self.picks.iter().enumerate() {
            out.column_mut(j).copy_from(&a.column(p.index));
            out.column_mut(j).scale_mut(p.weight);
        }
        Ok(out)
    }

    /// `SᵀΩᵀA`: row j is `weight_j · A[index_j, :]`.
    pub fn apply_rows(&self, a: &Matrix) -> Result<Matrix> {
        if a.nrows() != self.source_dim {
            return Err(Error::arg(format!(
                "plan over {} rows applied to a matrix with {} rows",
                self.source_dim,
                a.nrows()
            )));
        }
        let mut out = Matrix::zeros(self.picks.len(), a.ncols());
        for (i, p) in self.picks.iter().enumerate() {
            for j in 0..a.ncols() {
                out[(i, j)] = p.weight * a[(p.index, j)];
            }
        }
        Ok(out)
    }

    /// `SᵀΩᵀb`.
    pub fn apply_vector(&self, b: &Vector) -> Result<Vector> {
        if b.len() != self.source_dim {
            return Err(Error::arg(format!(
                "plan over {} entries applied to a vector of length {}",
                self.source_dim,
                b.len()
            )));
        }
        Ok(Vector::from_iterator(self.picks.len(), self.picks.iter().map(|p| p.weight * b[p.index])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::from_row_major;

    #[test]
    fn picks_columns_of_identity() {
        let plan = SamplingPlan::unweighted(3, &[0, 2], false).unwrap();
        let c = plan.apply_columns(&Matrix::identity(3, 3)).unwrap();
        assert_eq!(c, from_row_major(3, 2, &[1.0, 0.0, 0.0, 0.0, 0.0, 1.0]).unwrap());
    }

    #[test]
    fn rescales() {
        let a = from_row_major(2, 2, &[0.0, 1.0, 0.0, 1.0]).unwrap();
        let plan = SamplingPlan::new(2, vec![Pick { index: 1, weight: 2.0 }], false).unwrap();
        let c = plan.apply_columns(&a).unwrap();
        assert_eq!(c.as_slice(), &[2.0, 2.0]);
    }

    #[test]
    fn identity_plan_copies() {
        let a = from_row_major(2, 3, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        let plan = SamplingPlan::unweighted(3, &[0, 1, 2], false).unwrap();
        assert_eq!(plan.apply_columns(&a).unwrap(), a);
        let rows = SamplingPlan::unweighted(2, &[0, 1], false).unwrap();
        assert_eq!(rows.apply_rows(&a).unwrap(), a);
    }

    #[test]
    fn validation() {
        assert!(SamplingPlan::unweighted(2, &[2], false).is_err());
        assert!(SamplingPlan::unweighted(3, &[1, 1], false).is_err());
        assert!(SamplingPlan::unweighted(3, &[1, 1], true).is_ok());
        assert!(SamplingPlan::new(3, vec![Pick { index: 0, weight: 0.0 }], true).is_err());
        let plan = SamplingPlan::unweighted(3, &[0], false).unwrap();
        assert!(plan.apply_columns(&Matrix::zeros(2, 2)).is_err());
    }
}
