mod common;

use common::orthonormal;
use matsketch::cx::{cssp, interpolative_decomposition, CsspMode, NormKind};
use matsketch::io::{format_csv, format_matrix_market, parse_matrix, MatrixFormat};
use matsketch::kmeans::{centroid_cost, kmeans_cost, ClusterAssignment};
use matsketch::linalg::{
    best_rank_k_in_subspace, pseudo_inverse, residual_after_projection, select_columns, singular_values, svd, Matrix,
};
use matsketch::oracles::{best_subset_exhaustive, SubsetMode};
use matsketch::samplers::barrier_single;
use matsketch::sketch::{gaussian_matrix, sign_matrix};
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

/// Random matrix of the given rank (at most min(m, n)).
fn product(m: usize, n: usize, rank: usize, seed: u64) -> Matrix {
    gaussian_matrix(m, rank, seed) * gaussian_matrix(rank, n, seed.wrapping_add(1))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn svd_reconstructs_with_sorted_values(m in 1usize..12, n in 1usize..12, rank in 1usize..12, seed in any::<u64>()) {
        let a = product(m, n, rank.min(m).min(n), seed);
        let f = svd(&a).unwrap();
        prop_assert!(f.rank <= rank.min(m).min(n));
        prop_assert!((f.reconstruct() - &a).norm() <= 1e-11 * a.norm().max(1.0));
        prop_assert!(f.singular_values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn penrose_conditions(m in 1usize..10, n in 1usize..10, rank in 1usize..10, seed in any::<u64>()) {
        let a = product(m, n, rank.min(m).min(n), seed);
        let p = pseudo_inverse(&a).unwrap();
        let s = a.norm();
        prop_assert!((&a * &p * &a - &a).amax() <= 1e-9 * s);
        let ap = &a * &p;
        let pa = &p * &a;
        prop_assert!((&ap - ap.transpose()).amax() <= 1e-9);
        prop_assert!((&pa - pa.transpose()).amax() <= 1e-9);
    }

    #[test]
    fn pythagoras_for_projections(m in 3usize..15, n in 2usize..10, c in 1usize..4, seed in any::<u64>()) {
        let a = gaussian_matrix(m, n, seed);
        let cols = gaussian_matrix(m, c.min(m), seed ^ 0x5a5a);
        let resid = residual_after_projection(&a, &cols).unwrap();
        let kept = &a - &resid;
        let total = a.norm_squared();
        prop_assert!((kept.norm_squared() + resid.norm_squared() - total).abs() <= 1e-9 * total);
        prop_assert!(resid.norm() <= a.norm() * (1.0 + 1e-12));
        prop_assert!(singular_values(&resid).unwrap()[0] <= singular_values(&a).unwrap()[0] * (1.0 + 1e-12));
    }

    #[test]
    fn subspace_approximation_no_better_than_svd(m in 4usize..14, n in 4usize..12, k in 1usize..4, seed in any::<u64>()) {
        let a = gaussian_matrix(m, n, seed);
        let c = select_columns(&a, &(0..(k + 2).min(n)).collect::<Vec<_>>());
        let approx = best_rank_k_in_subspace(&a, &c, k).unwrap();
        let f = svd(&a).unwrap();
        let err = (&a - &approx.approx).norm();
        prop_assert!(err >= f.tail_frobenius(k) * (1.0 - 1e-10));
        let outside = residual_after_projection(&a, &c).unwrap().norm();
        prop_assert!(err >= outside * (1.0 - 1e-10));
        prop_assert!(err <= a.norm() * (1.0 + 1e-12));
    }

    #[test]
    fn sign_matrix_entries(rows in 1usize..20, cols in 1usize..20, seed in any::<u64>()) {
        let s = sign_matrix(rows, cols, seed);
        let v = 1.0 / (cols as f64).sqrt();
        prop_assert!(s.iter().all(|&x| x == v || x == -v));
        prop_assert!(s.row_iter().all(|r| (r.norm_squared() - 1.0).abs() < 1e-12));
        prop_assert_eq!(s, sign_matrix(rows, cols, seed));
    }

    #[test]
    fn sketches_are_deterministic(rows in 1usize..15, cols in 1usize..15, seed in any::<u64>()) {
        prop_assert_eq!(gaussian_matrix(rows, cols, seed), gaussian_matrix(rows, cols, seed));
    }

    #[test]
    fn barrier_plan_invariants(n in 8usize..30, k in 1usize..4, extra in 1usize..10, seed in any::<u64>()) {
        let v = orthonormal(n, k, seed);
        let r = (k + extra).min(n);
        let plan = barrier_single(&v, r).unwrap();
        prop_assert_eq!(plan.source_dim, n);
        prop_assert!(plan.distinct() <= r);
        prop_assert!(plan.picks.iter().all(|p| p.index < n && p.weight > 0.0 && p.weight.is_finite()));
        let applied = plan.apply_columns(&v.transpose()).unwrap();
        prop_assert_eq!(applied.shape(), (k, plan.len()));
        let lo = 1.0 - (k as f64 / r as f64).sqrt();
        let sv = singular_values(&applied).unwrap();
        prop_assert!(sv.len() == k && sv[k - 1] >= lo * (1.0 - 1e-9));
    }

    #[test]
    fn oracle_dominates_cssp(seed in 0u64..1000) {
        let a = gaussian_matrix(10, 8, seed);
        let got = cssp(&a, 2, CsspMode::Frobenius, 0.2, seed).unwrap();
        let c = got.plan.distinct();
        let best = best_subset_exhaustive(&a, 2, c, NormKind::Frobenius, SubsetMode::PiCk).unwrap();
        prop_assert!(best.error <= got.rank_k_error_frobenius * (1.0 + 1e-10));
    }

    #[test]
    fn interpolative_contains_identity(seed in any::<u64>(), k in 2usize..5) {
        let a = product(15, 10, k, seed);
        let id = interpolative_decomposition(&a, k, seed).unwrap();
        for (row, &j) in id.indices.iter().enumerate() {
            for i in 0..k {
                let want = if i == row { 1.0 } else { 0.0 };
                prop_assert!((id.x[(i, j)] - want).abs() < 1e-10);
            }
        }
        prop_assert!(id.x.amax() <= 2.0 + 1e-9);
        prop_assert!((&id.c * &id.x - &a).norm() <= 1e-8 * a.norm());
    }

    #[test]
    fn kmeans_cost_ignores_label_names(seed in any::<u64>(), k in 2usize..5, shift in 1usize..4) {
        let a = gaussian_matrix(20, 4, seed);
        let labels: Vec<usize> = (0..20).map(|i| i % k).collect();
        let renamed: Vec<usize> = labels.iter().map(|l| (l + shift) % k).collect();
        let x = ClusterAssignment::new(labels, k).unwrap();
        let y = ClusterAssignment::new(renamed, k).unwrap();
        prop_assert!(x.same_partition(&y));
        let (cx, cy) = (kmeans_cost(&a, &x).unwrap(), kmeans_cost(&a, &y).unwrap());
        prop_assert!((cx - cy).abs() <= 1e-10 * cx.max(1.0));
        prop_assert!((cx - centroid_cost(&a, &x).unwrap()).abs() <= 1e-9 * cx.max(1.0));
    }

    #[test]
    fn text_formats_round_trip(m in 1usize..8, n in 1usize..8, seed in any::<u64>(), scale in -300i32..300) {
        let a = gaussian_matrix(m, n, seed) * 10f64.powi(scale);
        for (text, fmt) in [(format_matrix_market(&a), MatrixFormat::Matrixmarket), (format_csv(&a), MatrixFormat::Csv)] {
            let b = parse_matrix(&text, fmt).unwrap();
            prop_assert_eq!(b.shape(), a.shape());
            prop_assert!(a.iter().zip(b.iter()).all(|(x, y)| x.to_bits() == y.to_bits()));
        }
    }
}
