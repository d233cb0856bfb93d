//! Empirical copula evaluation and the plug-in dissimilarity estimators.
//!
//! Every estimator is a function of the pseudo-observations only, so all of
//! them are exactly invariant under strictly increasing transforms of the raw
//! data. The integral forms are evaluated in closed form -- the empirical
//! copula is piecewise constant, so each integral is a finite sum:
//!
//! * medial (Blomqvist-type):  `1/2 - C_hat(1/2, ..., 1/2)`
//! * footrule:                 `mean_i(max_j u_ij) - 1/2`
//! * Kendall-type:             `1/2 - (strict + weak) / (2 n^2)` where strict
//!   and weak count componentwise-dominated ordered row pairs
//! * Spearman-type:            `1/(d+1) - mean_i(prod_j (1 - u_ij))`
//! * lower tail:               `1 - C_hat((k/n) 1) / (k/n)`, clamped to [0,1]
//!
//! Averaging the strict and weak dominance counts (the diagonal pair `i = k`
//! included) makes the Kendall estimator hit exactly 1/2 on comonotone
//! columns at any finite n, so the zero-on-comonotone axiom holds in-sample.

use crate::data::PseudoObsMatrix;
use crate::error::{Error, Result};
use rayon::prelude::*;

/// Non-empty sorted set of column indices selecting a margin.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColumnSet {
    indices: Vec<usize>,
}

impl ColumnSet {
    /// Sorts and validates: non-empty, no duplicates.
    pub fn new(mut indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::EmptyColumnSet);
        }
        indices.sort_unstable();
        for w in indices.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateColumn { index: w[0] });
            }
        }
        Ok(Self { indices })
    }

    pub fn singleton(index: usize) -> Self {
        Self {
            indices: vec![index],
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        false // the constructor rejects empty sets
    }

    pub fn is_disjoint(&self, other: &ColumnSet) -> bool {
        // Both sides are sorted.
        let (mut i, mut j) = (0, 0);
        while i < self.indices.len() && j < other.indices.len() {
            match self.indices[i].cmp(&other.indices[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    /// Union of two disjoint sets.
    pub fn union(&self, other: &ColumnSet) -> Result<ColumnSet> {
        check_disjoint(self, other)?;
        let mut indices: Vec<usize> = self
            .indices
            .iter()
            .chain(other.indices.iter())
            .copied()
            .collect();
        indices.sort_unstable();
        Ok(ColumnSet { indices })
    }

    fn check_bounds(&self, n_cols: usize) -> Result<()> {
        match self.indices.last() {
            Some(&max) if max >= n_cols => Err(Error::ColumnOutOfBounds {
                index: max,
                cols: n_cols,
            }),
            _ => Ok(()),
        }
    }
}

fn check_disjoint(a: &ColumnSet, b: &ColumnSet) -> Result<()> {
    if let Some(&shared) = a.indices.iter().find(|i| b.indices.contains(i)) {
        return Err(Error::OverlappingSets { index: shared });
    }
    Ok(())
}

fn check_pair(p: &PseudoObsMatrix, a: &ColumnSet, b: &ColumnSet) -> Result<()> {
    a.check_bounds(p.n_cols())?;
    b.check_bounds(p.n_cols())?;
    check_disjoint(a, b)
}

/// Which dissimilarity family to estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeasureKind {
    /// Medial-correlation type: copula evaluated at the centre point.
    Beta,
    /// Footrule type: integral of the copula along the diagonal.
    Footrule,
    /// Kendall type: concordance of the copula with itself.
    Kendall,
    /// Spearman type: concordance of the copula with independence.
    Spearman,
    /// Lower-tail type with threshold count `k` (the estimator looks at the
    /// lowest `k` of `n` ranks; a common default is `n.isqrt()`).
    LowerTail { k: usize },
}

impl MeasureKind {
    /// Lower-tail kind with the default `floor(sqrt(n))` threshold.
    pub fn lower_tail_default(n: usize) -> Self {
        MeasureKind::LowerTail { k: n.isqrt().max(1) }
    }
}

/// Empirical copula of the selected margin at `point`:
/// the fraction of rows componentwise below `point`.
pub fn empirical_copula_at(
    p: &PseudoObsMatrix,
    cols: &ColumnSet,
    point: &[f64],
) -> Result<f64> {
    cols.check_bounds(p.n_cols())?;
    if point.len() != cols.len() {
        return Err(Error::PointDimensionMismatch {
            expected: cols.len(),
            got: point.len(),
        });
    }
    let columns: Vec<&[f64]> = cols.indices().iter().map(|&j| p.column(j)).collect();
    let n = p.n_rows();
    let mut count = 0usize;
    for i in 0..n {
        if columns.iter().zip(point).all(|(col, &t)| col[i] <= t) {
            count += 1;
        }
    }
    Ok(count as f64 / n as f64)
}

/// Medial-type dissimilarity: `1/2 - C_hat` at the all-halves point of the
/// `A ∪ B` margin.
pub fn diss_beta(p: &PseudoObsMatrix, a: &ColumnSet, b: &ColumnSet) -> Result<f64> {
    check_pair(p, a, b)?;
    let cols = union_columns(p, a, b);
    let n = p.n_rows();
    let mut count = 0usize;
    for i in 0..n {
        if cols.iter().all(|col| col[i] <= 0.5) {
            count += 1;
        }
    }
    Ok(0.5 - count as f64 / n as f64)
}

/// Footrule-type dissimilarity: `mean_i(max_j u_ij) - 1/2`, the closed form
/// of one half minus the diagonal integral of the empirical copula.
pub fn diss_footrule(p: &PseudoObsMatrix, a: &ColumnSet, b: &ColumnSet) -> Result<f64> {
    check_pair(p, a, b)?;
    let cols = union_columns(p, a, b);
    let n = p.n_rows();
    let mut sum = 0.0;
    for i in 0..n {
        let mut max = 0.0f64;
        for col in &cols {
            max = max.max(col[i]);
        }
        sum += max;
    }
    Ok(sum / n as f64 - 0.5)
}

/// Kendall-type dissimilarity: `1/2` minus the self-concordance of the
/// empirical copula, counting strict and weak dominance of all ordered row
/// pairs (diagonal included) with equal weight.
pub fn diss_kendall(p: &PseudoObsMatrix, a: &ColumnSet, b: &ColumnSet) -> Result<f64> {
    check_pair(p, a, b)?;
    let cols = union_columns(p, a, b);
    let n = p.n_rows();
    let mut strict = 0u64;
    let mut weak = n as u64; // each row weakly dominates itself
    for i in 0..n {
        for k in (i + 1)..n {
            let mut le_ik = true;
            let mut lt_ik = true;
            let mut le_ki = true;
            let mut lt_ki = true;
            for col in &cols {
                let x = col[i];
                let y = col[k];
                if x > y {
                    le_ik = false;
                    lt_ik = false;
                } else if x == y {
                    lt_ik = false;
                    lt_ki = false;
                } else {
                    le_ki = false;
                    lt_ki = false;
                }
                if !le_ik && !le_ki {
                    break;
                }
            }
            strict += lt_ik as u64 + lt_ki as u64;
            weak += le_ik as u64 + le_ki as u64;
        }
    }
    let n2 = (n as f64) * (n as f64);
    Ok(0.5 - (strict as f64 + weak as f64) / (2.0 * n2))
}

/// Spearman-type dissimilarity: `1/(d+1) - mean_i(prod_j (1 - u_ij))` over
/// the `d = |A| + |B|` columns of the union margin.
pub fn diss_spearman(p: &PseudoObsMatrix, a: &ColumnSet, b: &ColumnSet) -> Result<f64> {
    check_pair(p, a, b)?;
    let cols = union_columns(p, a, b);
    let d = cols.len();
    let n = p.n_rows();
    let mut sum = 0.0;
    for i in 0..n {
        let mut prod = 1.0;
        for col in &cols {
            prod *= 1.0 - col[i];
        }
        sum += prod;
    }
    Ok(1.0 / (d as f64 + 1.0) - sum / n as f64)
}

/// Lower-tail dissimilarity: `1 - C_hat((k/n) 1) / (k/n)` on the union
/// margin, clamped into [0, 1].
pub fn diss_ltd(p: &PseudoObsMatrix, a: &ColumnSet, b: &ColumnSet, k: usize) -> Result<f64> {
    check_pair(p, a, b)?;
    let n = p.n_rows();
    if k < 1 || k > n {
        return Err(Error::ThresholdOutOfRange { k, n });
    }
    let cols = union_columns(p, a, b);
    let t = k as f64 / n as f64;
    let mut count = 0usize;
    for i in 0..n {
        if cols.iter().all(|col| col[i] <= t) {
            count += 1;
        }
    }
    let lambda = (count as f64 / n as f64) / t;
    Ok((1.0 - lambda).clamp(0.0, 1.0))
}

/// Dispatches to the estimator selected by `kind`.
pub fn dissimilarity(
    p: &PseudoObsMatrix,
    a: &ColumnSet,
    b: &ColumnSet,
    kind: MeasureKind,
) -> Result<f64> {
    match kind {
        MeasureKind::Beta => diss_beta(p, a, b),
        MeasureKind::Footrule => diss_footrule(p, a, b),
        MeasureKind::Kendall => diss_kendall(p, a, b),
        MeasureKind::Spearman => diss_spearman(p, a, b),
        MeasureKind::LowerTail { k } => diss_ltd(p, a, b, k),
    }
}

/// Normalized multivariate Kendall companion of a Kendall-type dissimilarity
/// over a `dim`-column margin. Display-only: the normalization rescales per
/// dimension and is not safe to cluster with.
pub fn kendall_kappa(diss: f64, dim: usize) -> f64 {
    let pi_self = 0.5f64.powi(dim as i32);
    (0.5 - diss - pi_self) / (0.5 - pi_self)
}

/// Columns of the `A ∪ B` margin in sorted index order. The canonical order
/// makes every estimator evaluate the same float expression for `(A, B)` and
/// `(B, A)`, so symmetry holds bit for bit even where the arithmetic is
/// order-sensitive (the Spearman product).
fn union_columns<'a>(p: &'a PseudoObsMatrix, a: &ColumnSet, b: &ColumnSet) -> Vec<&'a [f64]> {
    let mut indices: Vec<usize> = a.indices().iter().chain(b.indices()).copied().collect();
    indices.sort_unstable();
    indices.iter().map(|&j| p.column(j)).collect()
}

/// Symmetric m×m matrix of pairwise dissimilarities with a zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseMatrix {
    dim: usize,
    values: Vec<f64>, // row-major
}

impl PairwiseMatrix {
    /// Wraps a full row-major matrix; callers normally use
    /// [`pairwise_matrix`] instead.
    pub fn from_values(dim: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != dim * dim {
            return Err(Error::MatrixIndexOutOfBounds {
                dim,
                index: values.len(),
            });
        }
        Ok(Self { dim, values })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.dim + j]
    }
}

/// All pairwise `(1,1)`-dissimilarities of the matrix columns under `kind`.
/// Entries are computed in parallel; the result does not depend on the
/// thread count.
pub fn pairwise_matrix(p: &PseudoObsMatrix, kind: MeasureKind) -> Result<PairwiseMatrix> {
    let m = p.n_cols();
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| ((i + 1)..m).map(move |j| (i, j)))
        .collect();
    let computed: Vec<((usize, usize), f64)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let d = dissimilarity(p, &ColumnSet::singleton(i), &ColumnSet::singleton(j), kind)?;
            Ok(((i, j), d))
        })
        .collect::<Result<_>>()?;
    let mut values = vec![0.0; m * m];
    for ((i, j), d) in computed {
        values[i * m + j] = d;
        values[j * m + i] = d;
    }
    PairwiseMatrix::from_values(m, values)
}
