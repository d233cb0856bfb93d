//! Linkage compositions: lifting a pairwise dissimilarity matrix to sets of
//! columns via the minimum, mean, or maximum over the cross pairs.

use crate::empirical::{ColumnSet, PairwiseMatrix};
use crate::error::{Error, Result};

/// How to compose pairwise values over two column sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinkageMethod {
    Single,
    Average,
    Complete,
}

/// Composes the pairwise entries `D[a, b]`, `a ∈ A`, `b ∈ B`:
/// minimum (single), mean (average), or maximum (complete).
pub fn linkage_dissimilarity(
    d: &PairwiseMatrix,
    a: &ColumnSet,
    b: &ColumnSet,
    method: LinkageMethod,
) -> Result<f64> {
    if !a.is_disjoint(b) {
        let shared = *a
            .indices()
            .iter()
            .find(|i| b.indices().contains(i))
            .expect("overlap exists");
        return Err(Error::OverlappingSets { index: shared });
    }
    for &idx in a.indices().iter().chain(b.indices()) {
        if idx >= d.dim() {
            return Err(Error::MatrixIndexOutOfBounds {
                dim: d.dim(),
                index: idx,
            });
        }
    }
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    let mut sum = 0.0;
    for &i in a.indices() {
        for &j in b.indices() {
            let v = d.get(i, j);
            min = min.min(v);
            max = max.max(v);
            sum += v;
        }
    }
    Ok(match method {
        LinkageMethod::Single => min,
        LinkageMethod::Average => sum / (a.len() * b.len()) as f64,
        LinkageMethod::Complete => max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix3(d01: f64, d02: f64, d12: f64) -> PairwiseMatrix {
        #[rustfmt::skip]
        let values = vec![
            0.0, d01, d02,
            d01, 0.0, d12,
            d02, d12, 0.0,
        ];
        PairwiseMatrix::from_values(3, values).unwrap()
    }

    #[test]
    fn direct_arithmetic_example() {
        // A = {0, 1}, B = {2}, D[0,2] = 0.2, D[1,2] = 0.4.
        let d = matrix3(0.9, 0.2, 0.4);
        let a = ColumnSet::new(vec![0, 1]).unwrap();
        let b = ColumnSet::singleton(2);
        assert_eq!(linkage_dissimilarity(&d, &a, &b, LinkageMethod::Single).unwrap(), 0.2);
        assert!(
            (linkage_dissimilarity(&d, &a, &b, LinkageMethod::Average).unwrap() - 0.3).abs()
                < 1e-15
        );
        assert_eq!(
            linkage_dissimilarity(&d, &a, &b, LinkageMethod::Complete).unwrap(),
            0.4
        );
    }

    #[test]
    fn constant_matrix_collapses_all_methods() {
        let d = matrix3(0.7, 0.7, 0.7);
        let a = ColumnSet::new(vec![0, 2]).unwrap();
        let b = ColumnSet::singleton(1);
        for method in [LinkageMethod::Single, LinkageMethod::Average, LinkageMethod::Complete] {
            assert_eq!(linkage_dissimilarity(&d, &a, &b, method).unwrap(), 0.7);
        }
    }

    #[test]
    fn rejects_overlap_and_out_of_bounds() {
        let d = matrix3(0.1, 0.2, 0.3);
        let a = ColumnSet::new(vec![0, 1]).unwrap();
        assert_eq!(
            linkage_dissimilarity(&d, &a, &ColumnSet::singleton(1), LinkageMethod::Single)
                .unwrap_err(),
            Error::OverlappingSets { index: 1 }
        );
        assert_eq!(
            linkage_dissimilarity(&d, &a, &ColumnSet::singleton(9), LinkageMethod::Single)
                .unwrap_err(),
            Error::MatrixIndexOutOfBounds { dim: 3, index: 9 }
        );
    }
}
