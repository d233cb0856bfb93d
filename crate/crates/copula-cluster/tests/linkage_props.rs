//! Properties of the linkage compositions on arbitrary symmetric matrices:
//! ordering between the three methods, exact reducibility under merges, and
//! idempotence of min/max under duplicated rows.

use copula_cluster::{
    agglomerate, linkage_dissimilarity, ColumnSet, LinkageMethod, LinkageProvider, PairwiseMatrix,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

fn random_matrix(dim: usize, rng: &mut ChaCha12Rng) -> PairwiseMatrix {
    let mut values = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in (i + 1)..dim {
            let v = rng.random_range(0.0..0.5);
            values[i * dim + j] = v;
            values[j * dim + i] = v;
        }
    }
    PairwiseMatrix::from_values(dim, values).unwrap()
}

/// Three disjoint non-empty sets of sizes 1--2 drawn from `0..dim`.
fn random_sets(dim: usize, rng: &mut ChaCha12Rng) -> (ColumnSet, ColumnSet, ColumnSet) {
    let mut idx: Vec<usize> = (0..dim).collect();
    idx.shuffle(rng);
    let s1 = rng.random_range(1..=2usize);
    let s2 = rng.random_range(1..=2usize);
    let s3 = rng.random_range(1..=2usize);
    assert!(s1 + s2 + s3 <= dim);
    let a1 = ColumnSet::new(idx[..s1].to_vec()).unwrap();
    let a2 = ColumnSet::new(idx[s1..s1 + s2].to_vec()).unwrap();
    let b = ColumnSet::new(idx[s1 + s2..s1 + s2 + s3].to_vec()).unwrap();
    (a1, a2, b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// min over cross pairs ≤ mean ≤ max, on any matrix and any sets.
    #[test]
    fn methods_are_ordered(seed in 0u64..5000) {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let d = random_matrix(7, &mut rng);
        let (a1, a2, b) = random_sets(7, &mut rng);
        let a = a1.union(&a2).unwrap();
        let single = linkage_dissimilarity(&d, &a, &b, LinkageMethod::Single).unwrap();
        let average = linkage_dissimilarity(&d, &a, &b, LinkageMethod::Average).unwrap();
        let complete = linkage_dissimilarity(&d, &a, &b, LinkageMethod::Complete).unwrap();
        prop_assert!(single <= average && average <= complete);
    }

    /// Merging can only move a composed value outward in a controlled way:
    /// for every method, d(A′∪A″, B) lies between min and max of d(A′, B)
    /// and d(A″, B), so the reducibility inequality holds with no premise.
    /// Single linkage attains the minimum exactly.
    #[test]
    fn merge_value_is_bracketed(seed in 0u64..5000) {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let d = random_matrix(8, &mut rng);
        let (a1, a2, b) = random_sets(8, &mut rng);
        let union = a1.union(&a2).unwrap();
        for method in [LinkageMethod::Single, LinkageMethod::Average, LinkageMethod::Complete] {
            let d1 = linkage_dissimilarity(&d, &a1, &b, method).unwrap();
            let d2 = linkage_dissimilarity(&d, &a2, &b, method).unwrap();
            let du = linkage_dissimilarity(&d, &union, &b, method).unwrap();
            prop_assert!(d1.min(d2) <= du + 1e-15, "{:?}: {} vs {}", method, d1.min(d2), du);
            prop_assert!(du <= d1.max(d2) + 1e-15, "{:?}: {} vs {}", method, du, d1.max(d2));
        }
        let s1 = linkage_dissimilarity(&d, &a1, &b, LinkageMethod::Single).unwrap();
        let s2 = linkage_dissimilarity(&d, &a2, &b, LinkageMethod::Single).unwrap();
        let su = linkage_dissimilarity(&d, &union, &b, LinkageMethod::Single).unwrap();
        prop_assert_eq!(su, s1.min(s2));
    }

    /// A column whose matrix row duplicates an existing member of A changes
    /// nothing for single and complete linkage (min and max are idempotent).
    #[test]
    fn duplicated_row_is_idempotent_for_min_max(seed in 0u64..5000) {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let dim = 6;
        let base = random_matrix(dim, &mut rng);
        // Extend with column `dim` cloning column 0's row.
        let ext = dim + 1;
        let mut values = vec![0.0; ext * ext];
        for i in 0..dim {
            for j in 0..dim {
                values[i * ext + j] = base.get(i, j);
            }
        }
        for j in 0..dim {
            values[dim * ext + j] = base.get(0, j);
            values[j * ext + dim] = base.get(0, j);
        }
        // The clone sits at distance 0 from its original.
        values[dim * ext] = 0.0;
        values[dim * ext + dim] = 0.0;
        values[dim] = 0.0;
        let d = PairwiseMatrix::from_values(ext, values).unwrap();
        let a = ColumnSet::new(vec![0, 2]).unwrap();
        let a_dup = ColumnSet::new(vec![0, 2, dim]).unwrap();
        let b = ColumnSet::new(vec![3, 4]).unwrap();
        for method in [LinkageMethod::Single, LinkageMethod::Complete] {
            let plain = linkage_dissimilarity(&d, &a, &b, method).unwrap();
            let dup = linkage_dissimilarity(&d, &a_dup, &b, method).unwrap();
            prop_assert_eq!(plain.to_bits(), dup.to_bits(), "{:?}", method);
        }
    }

    /// On a constant matrix every method returns the constant (the mean of k
    /// identical floats may round by an ulp), and the whole agglomeration
    /// merges at that height throughout.
    #[test]
    fn constant_matrix_collapses(c in 0.01f64..0.49) {
        let dim = 5;
        let mut values = vec![c; dim * dim];
        for i in 0..dim {
            values[i * dim + i] = 0.0;
        }
        let d = PairwiseMatrix::from_values(dim, values).unwrap();
        let names: Vec<String> = (0..dim).map(|j| format!("v{j}")).collect();
        for method in [LinkageMethod::Single, LinkageMethod::Average, LinkageMethod::Complete] {
            let tree =
                agglomerate(&LinkageProvider::new(&d, method), names.clone()).unwrap();
            for rec in tree.merges() {
                prop_assert!((rec.height - c).abs() <= 4.0 * f64::EPSILON, "{:?}", method);
            }
        }
    }

    /// Single-linkage merge heights never decrease, whatever the matrix.
    #[test]
    fn single_linkage_heights_monotone(seed in 0u64..5000) {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let d = random_matrix(8, &mut rng);
        let names: Vec<String> = (0..8).map(|j| format!("v{j}")).collect();
        let tree =
            agglomerate(&LinkageProvider::new(&d, LinkageMethod::Single), names).unwrap();
        let heights: Vec<f64> = tree.merges().iter().map(|r| r.height).collect();
        prop_assert!(heights.windows(2).all(|w| w[0] <= w[1]), "{:?}", heights);
    }
}
