//! Deterministic dual-set spectral sparsification by barrier potentials.
//!
//! Given the rows `v_i` of an orthonormal `V` (n×k) and a second family of vectors, the
//! routines below pick `r` weighted indices greedily. Two accumulators are grown,
//! `A = Σ s_i v_i v_iᵀ` (kept above a lower barrier `L_τ`) and either `B = Σ s_i u_i u_iᵀ`
//! (kept below an upper barrier `U_τ`) or the scalar `Σ s_i ‖a_i‖²`. After `r` steps the
//! weights are rescaled so that `σ_k(VᵀΩS) ≥ 1 − √(k/r)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{column_norms_sq, orthonormality_defect, sym_eigen, Matrix, Pick, SamplingPlan};
use crate::WidthPolicy;

/// The second vector family of a dual-set run.
#[derive(Debug, Clone, Copy)]
pub enum BarrierUpper<'a> {
    /// Rows of an orthonormal n×ℓ matrix; bounds `‖UᵀΩS‖₂ ≤ 1 + √(ℓ/r)`.
    Spectral(&'a Matrix),
    /// `U = I_n`; same bound as `Spectral` with ℓ = n, without forming the identity.
    Identity,
    /// Columns of an ℓ×n matrix; bounds `‖AΩS‖_F ≤ ‖A‖_F`.
    Frobenius(&'a Matrix),
}

/// Accumulator state before step `tau` (the last entry is the state after the final step).
#[derive(Debug, Clone, Serialize)]
pub struct BarrierState {
    pub tau: usize,
    pub lower: f64,
    pub upper: f64,
    /// `φ_(L_τ, A_τ) = Σ 1/(λ_i − L_τ)`.
    pub lower_potential: f64,
    /// `φ̄(U_τ, B_τ) = Σ 1/(U_τ − λ_i)`; zero for the Frobenius variant.
    pub upper_potential: f64,
    pub lambda_min: f64,
    /// `λ_max(B_τ)`, or the accumulated trace for the Frobenius variant.
    pub upper_extreme: f64,
    /// Index chosen at this step (`None` for the final state).
    pub index: Option<usize>,
    pub t: f64,
}

/// Full record of a barrier run.
#[derive(Debug, Clone, Serialize)]
pub struct BarrierTrace {
    pub delta_lower: f64,
    pub delta_upper: f64,
    pub states: Vec<BarrierState>,
}

/// A barrier run: the rescaled plan and the per-step record.
#[derive(Debug, Clone)]
pub struct BarrierRun {
    pub plan: SamplingPlan,
    pub trace: BarrierTrace,
}

const FEASIBILITY_TOL: f64 = 1e-9;

fn orthonormal_tol(n: usize, k: usize) -> f64 {
    1e-10 * n.max(k).max(1) as f64
}

fn check_orthonormal(m: &Matrix, what: &str) -> Result<()> {
    let defect = orthonormality_defect(m);
    if defect > orthonormal_tol(m.nrows(), m.ncols()) {
        return Err(Error::arg(format!(
            "{what} must have orthonormal columns (max |VᵀV − I| = {defect:e})"
        )));
    }
    Ok(())
}

/// Run the barrier method on `V` (n×k, orthonormal columns) against `upper`.
pub fn barrier_run(v: &Matrix, upper: BarrierUpper<'_>, r: usize, width: WidthPolicy) -> Result<BarrierRun> {
    let (n, k) = v.shape();
    if k == 0 {
        return Err(Error::arg("barrier sampling needs k >= 1"));
    }
    if r <= k {
        return Err(Error::arg(format!("barrier sampling needs r > k, got r = {r}, k = {k}")));
    }
    if r > n && width == WidthPolicy::Strict {
        return Err(Error::arg(format!("barrier sampling needs r <= n, got r = {r}, n = {n}")));
    }
    check_orthonormal(v, "V")?;
    match upper {
        BarrierUpper::Spectral(u) => {
            if u.nrows() != n {
                return Err(Error::dim(format!("U has {} rows but V has {n}", u.nrows())));
            }
            check_orthonormal(u, "U")?;
        }
        BarrierUpper::Frobenius(a) => {
            if a.ncols() != n {
                return Err(Error::dim(format!("A has {} columns but V has {n} rows", a.ncols())));
            }
        }
        BarrierUpper::Identity => {}
    }
    run(v, upper, r)
}

fn run(v: &Matrix, upper: BarrierUpper<'_>, r: usize) -> Result<BarrierRun> {
    let (n, k) = v.shape();
    let rf = r as f64;
    let shrink = 1.0 - (k as f64 / rf).sqrt();
    let root_rk = (rf * k as f64).sqrt();
    let delta_lower = 1.0;

    let frob_norms = match upper {
        BarrierUpper::Frobenius(a) => column_norms_sq(a),
        _ => Vec::new(),
    };
    let ell = match upper {
        BarrierUpper::Spectral(u) => u.ncols(),
        BarrierUpper::Identity => n,
        BarrierUpper::Frobenius(_) => 0,
    };
    let delta_upper = match upper {
        BarrierUpper::Frobenius(_) => frob_norms.iter().sum::<f64>() / shrink,
        _ => (1.0 + (ell as f64 / rf).sqrt()) / shrink,
    };
    let upper_at = |tau: f64| match upper {
        BarrierUpper::Frobenius(_) => tau * delta_upper,
        _ => delta_upper * (tau + (ell as f64 * rf).sqrt()),
    };

    let v_rows = crate::linalg::to_row_major(v);
    let u_rows = match upper {
        BarrierUpper::Spectral(umat) => crate::linalg::to_row_major(umat),
        _ => Vec::new(),
    };
    let mut s = vec![0.0; n];
    let mut a_acc = Matrix::zeros(k, k);
    let mut b_acc = match upper {
        BarrierUpper::Spectral(_) => Matrix::zeros(ell, ell),
        _ => Matrix::zeros(0, 0),
    };
    let mut trace_b = 0.0;
    let mut states = Vec::with_capacity(r + 1);

    for tau in 0..=r {
        let l = tau as f64 - root_rk;
        let u = upper_at(tau as f64);
        let (lam, q) = sym_eigen(&a_acc)?;
        let phi_l: f64 = lam.iter().map(|x| 1.0 / (x - l)).sum();

        let (mu, p) = match upper {
            BarrierUpper::Spectral(_) => sym_eigen(&b_acc)?,
            _ => (Vec::new(), Matrix::zeros(0, 0)),
        };
        let (phi_u, upper_extreme) = match upper {
            BarrierUpper::Spectral(_) => (
                mu.iter().map(|x| 1.0 / (u - x)).sum::<f64>(),
                mu.last().copied().unwrap_or(0.0),
            ),
            BarrierUpper::Identity => (
                s.iter().map(|x| 1.0 / (u - x)).sum::<f64>(),
                s.iter().copied().fold(0.0, f64::max),
            ),
            BarrierUpper::Frobenius(_) => (0.0, trace_b),
        };
        let mut state = BarrierState {
            tau,
            lower: l,
            upper: u,
            lower_potential: phi_l,
            upper_potential: phi_u,
            lambda_min: lam[0],
            upper_extreme,
            index: None,
            t: 0.0,
        };
        if tau == r {
            states.push(state);
            break;
        }

        let lp = l + delta_lower;
        let up = u + delta_upper;
        if lam[0] <= lp {
            return Err(Error::Infeasible { step: tau, margin: lam[0] - lp });
        }
        let phi_lp: f64 = lam.iter().map(|x| 1.0 / (x - lp)).sum();
        let denom_l = phi_lp - phi_l;
        let inv_l: Vec<f64> = lam.iter().map(|x| 1.0 / (x - lp)).collect();

        let (denom_u, inv_u) = match upper {
            BarrierUpper::Spectral(_) => {
                let phi_up: f64 = mu.iter().map(|x| 1.0 / (up - x)).sum();
                (phi_u - phi_up, mu.iter().map(|x| 1.0 / (up - x)).collect::<Vec<_>>())
            }
            BarrierUpper::Identity => {
                let phi_up: f64 = s.iter().map(|x| 1.0 / (up - x)).sum();
                (phi_u - phi_up, Vec::new())
            }
            BarrierUpper::Frobenius(_) => (0.0, Vec::new()),
        };

        let mut best_margin = f64::NEG_INFINITY;
        let mut chosen = None;
        for j in 0..n {
            let (mut quad2, mut quad1) = (0.0, 0.0);
            let vj = &v_rows[j * k..(j + 1) * k];
            for c in 0..k {
                let w = dot(&q.as_slice()[c * k..(c + 1) * k], vj);
                let w2 = w * w * inv_l[c];
                quad1 += w2;
                quad2 += w2 * inv_l[c];
            }
            let lv = quad2 / denom_l - quad1;
            let uv = match upper {
                BarrierUpper::Spectral(_) => {
                    let (mut q2, mut q1) = (0.0, 0.0);
                    let uj = &u_rows[j * ell..(j + 1) * ell];
                    for c in 0..ell {
                        let z = dot(&p.as_slice()[c * ell..(c + 1) * ell], uj);
                        let z2 = z * z * inv_u[c];
                        q1 += z2;
                        q2 += z2 * inv_u[c];
                    }
                    q2 / denom_u + q1
                }
                BarrierUpper::Identity => {
                    let g = 1.0 / (up - s[j]);
                    g * g / denom_u + g
                }
                BarrierUpper::Frobenius(_) => {
                    if delta_upper > 0.0 {
                        frob_norms[j] / delta_upper
                    } else {
                        0.0
                    }
                }
            };
            if lv > 0.0 && uv <= lv + FEASIBILITY_TOL * lv.abs().max(1.0) {
                chosen = Some((j, lv, uv));
                break;
            }
            if lv - uv > best_margin {
                best_margin = lv - uv;
            }
        }
        let (j, lv, uv) = chosen.ok_or(Error::Infeasible { step: tau, margin: best_margin })?;
        let t = 2.0 / (uv + lv);
        s[j] += t;
        let vj = v.row(j).transpose();
        a_acc += (&vj * vj.transpose()) * t;
        match upper {
            BarrierUpper::Spectral(umat) => {
                let uj = umat.row(j).transpose();
                b_acc += (&uj * uj.transpose()) * t;
            }
            BarrierUpper::Frobenius(_) => trace_b += t * frob_norms[j],
            BarrierUpper::Identity => {}
        }
        state.index = Some(j);
        state.t = t;
        states.push(state);
    }

    let scale = shrink / rf;
    let picks = s
        .iter()
        .enumerate()
        .filter(|(_, &w)| w > 0.0)
        .map(|(index, &w)| Pick { index, weight: (w * scale).sqrt() })
        .collect();
    let plan = SamplingPlan::new(n, picks, false)?;
    Ok(BarrierRun { plan, trace: BarrierTrace { delta_lower, delta_upper, states } })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Single-set sparsification: all `σ_i(VᵀΩS) ∈ [1 − √(k/r), 1 + √(k/r)]`.
pub fn barrier_single(v: &Matrix, r: usize) -> Result<SamplingPlan> {
    barrier_dual_spectral(v, v, r)
}

/// Dual-set spectral sparsification of `V` (n×k) against `U` (n×ℓ), both orthonormal.
pub fn barrier_dual_spectral(v: &Matrix, u: &Matrix, r: usize) -> Result<SamplingPlan> {
    Ok(barrier_run(v, BarrierUpper::Spectral(u), r, WidthPolicy::Strict)?.plan)
}

/// Dual-set spectral sparsification against `U = I_n`.
pub fn barrier_dual_identity(v: &Matrix, r: usize) -> Result<SamplingPlan> {
    Ok(barrier_run(v, BarrierUpper::Identity, r, WidthPolicy::Strict)?.plan)
}

/// Dual-set spectral-Frobenius sparsification of `V` (n×k) against the columns of `A` (ℓ×n).
pub fn barrier_dual_frobenius(v: &Matrix, a_cols: &Matrix, r: usize) -> Result<SamplingPlan> {
    Ok(barrier_run(v, BarrierUpper::Frobenius(a_cols), r, WidthPolicy::Strict)?.plan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{orth, singular_values, spectral_norm};
    use crate::sketch::gaussian_matrix;

    fn orthonormal(n: usize, k: usize, seed: u64) -> Matrix {
        orth(&gaussian_matrix(n, k, seed)).unwrap()
    }

    fn sigma_min(m: &Matrix) -> f64 {
        *singular_values(m).unwrap().last().unwrap()
    }

    #[test]
    fn single_set_bounds() {
        let v = orthonormal(60, 4, 1);
        let plan = barrier_single(&v, 16).unwrap();
        let m = plan.apply_columns(&v.transpose()).unwrap();
        let sv = singular_values(&m).unwrap();
        assert!(sv[3] >= 0.5 - 1e-9);
        assert!(sv[0] <= 1.5 + 1e-9);
        assert!(plan.len() <= 16);
        assert_eq!(plan, barrier_dual_spectral(&v, &v, 16).unwrap());
    }

    #[test]
    fn dual_set_example() {
        let v = orthonormal(40, 2, 2);
        let u = orthonormal(40, 3, 3);
        let plan = barrier_dual_spectral(&v, &u, 8).unwrap();
        assert!(sigma_min(&plan.apply_columns(&v.transpose()).unwrap()) >= 0.5 - 1e-9);
        let top = spectral_norm(&plan.apply_columns(&u.transpose()).unwrap()).unwrap();
        assert!(top <= 1.0 + (3.0f64 / 8.0).sqrt() + 1e-9);
    }

    #[test]
    fn frobenius_variant() {
        let v = orthonormal(100, 3, 4);
        let a = gaussian_matrix(5, 100, 5);
        let plan = barrier_dual_frobenius(&v, &a, 12).unwrap();
        assert!(plan.apply_columns(&a).unwrap().norm() <= a.norm() + 1e-9);
        assert!(sigma_min(&plan.apply_columns(&v.transpose()).unwrap()) >= 0.5 - 1e-9);

        let zero = Matrix::zeros(5, 100);
        let plan = barrier_dual_frobenius(&v, &zero, 12).unwrap();
        assert!(sigma_min(&plan.apply_columns(&v.transpose()).unwrap()) >= 0.5 - 1e-9);
    }

    #[test]
    fn identity_path_matches_explicit_identity() {
        let v = orthonormal(30, 3, 6);
        let fast = barrier_dual_identity(&v, 12).unwrap();
        let slow = barrier_dual_spectral(&v, &Matrix::identity(30, 30), 12).unwrap();
        assert_eq!(fast.indices(), slow.indices());
        for (a, b) in fast.weights().iter().zip(slow.weights()) {
            assert!((a - b).abs() < 1e-9 * b);
        }
    }

    #[test]
    fn trace_invariants() {
        let v = orthonormal(50, 3, 7);
        let u = orthonormal(50, 4, 8);
        let run = barrier_run(&v, BarrierUpper::Spectral(&u), 15, WidthPolicy::Strict).unwrap();
        let st = &run.trace.states;
        assert_eq!(st.len(), 16);
        for w in st.windows(2) {
            assert!((w[1].lower - w[0].lower - run.trace.delta_lower).abs() < 1e-12);
            assert!((w[1].upper - w[0].upper - run.trace.delta_upper).abs() < 1e-9);
        }
        for s in st {
            assert!(s.lambda_min > s.lower);
            assert!(s.upper_extreme < s.upper);
            assert!(s.lower_potential <= st[0].lower_potential + 1e-12);
            assert!(s.upper_potential <= st[0].upper_potential + 1e-12);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let v = orthonormal(20, 3, 9);
        assert!(barrier_single(&v, 3).is_err());
        assert!(barrier_single(&v, 21).is_err());
        assert!(barrier_single(&(v.clone() * 2.0), 8).is_err());
        assert!(barrier_run(&v, BarrierUpper::Identity, 25, WidthPolicy::AllowWider).is_ok());
    }
}
