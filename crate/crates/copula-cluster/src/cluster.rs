//! The agglomerative engine and its two dissimilarity providers.
//!
//! Linkage mode composes a precomputed pairwise matrix, so a whole run costs
//! O(m^2) estimator evaluations. Global mode re-estimates the genuinely
//! multivariate measure on every candidate union of clusters, which is what
//! lets it see dependence that only exists beyond the bivariate margins; a
//! per-run cache keyed by the (sorted) pair of column sets avoids repeating
//! queries for pairs untouched by earlier merges.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::data::{DataMatrix, PseudoObsMatrix};
use crate::dendrogram::{Dendrogram, MergeRecord};
use crate::empirical::{dissimilarity, pairwise_matrix, ColumnSet, MeasureKind, PairwiseMatrix};
use crate::error::{Error, Result};
use crate::linkage::{linkage_dissimilarity, LinkageMethod};

/// Source of dissimilarity values between clusters of columns.
/// Implementations must be symmetric in `(a, b)` and deterministic.
pub trait DissimilarityProvider {
    fn dissimilarity(&self, a: &ColumnSet, b: &ColumnSet) -> Result<f64>;
    /// Number of leaf columns the provider covers.
    fn leaf_count(&self) -> usize;
}

/// Linkage-mode provider: composes a pairwise matrix with a linkage method.
pub struct LinkageProvider<'a> {
    matrix: &'a PairwiseMatrix,
    method: LinkageMethod,
}

impl<'a> LinkageProvider<'a> {
    pub fn new(matrix: &'a PairwiseMatrix, method: LinkageMethod) -> Self {
        Self { matrix, method }
    }
}

impl DissimilarityProvider for LinkageProvider<'_> {
    fn dissimilarity(&self, a: &ColumnSet, b: &ColumnSet) -> Result<f64> {
        linkage_dissimilarity(self.matrix, a, b, self.method)
    }

    fn leaf_count(&self) -> usize {
        self.matrix.dim()
    }
}

/// Global-mode provider: evaluates the multivariate estimator on the union
/// margin of every queried pair, caching by the ordered pair of column sets.
pub struct GlobalProvider<'a> {
    pseudo: &'a PseudoObsMatrix,
    kind: MeasureKind,
    cache: Mutex<HashMap<(ColumnSet, ColumnSet), f64>>,
}

impl<'a> GlobalProvider<'a> {
    pub fn new(pseudo: &'a PseudoObsMatrix, kind: MeasureKind) -> Self {
        Self {
            pseudo,
            kind,
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl DissimilarityProvider for GlobalProvider<'_> {
    fn dissimilarity(&self, a: &ColumnSet, b: &ColumnSet) -> Result<f64> {
        let key = if a <= b {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        };
        if let Some(&v) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(v);
        }
        let v = dissimilarity(self.pseudo, a, b, self.kind)?;
        self.cache.lock().expect("cache lock").insert(key, v);
        Ok(v)
    }

    fn leaf_count(&self) -> usize {
        self.pseudo.n_cols()
    }
}

/// Runs the agglomerative algorithm: every column starts as its own class,
/// and at each of the `m - 1` steps the pair of classes with the smallest
/// dissimilarity merges at that value. Ties are broken lexicographically by
/// the candidate pair of cluster ids, so runs are fully deterministic.
/// Heights are recorded raw; inversions (a later merge below an earlier one)
/// are legitimate in global mode and pass through untouched.
pub fn agglomerate<P: DissimilarityProvider>(
    provider: &P,
    leaf_names: Vec<String>,
) -> Result<Dendrogram> {
    let m = leaf_names.len();
    if m < 2 {
        return Err(Error::TooFewColumns { got: m });
    }
    if provider.leaf_count() != m {
        return Err(Error::LeafCountMismatch {
            provider: provider.leaf_count(),
            names: m,
        });
    }
    // Active clusters ordered by id; ids are assigned m, m+1, ... on merge.
    let mut active: Vec<(usize, ColumnSet)> =
        (0..m).map(|j| (j, ColumnSet::singleton(j))).collect();
    let mut merges = Vec::with_capacity(m - 1);
    for step in 0..m - 1 {
        let mut best: Option<(f64, usize, usize)> = None;
        for (pos_a, (id_a, set_a)) in active.iter().enumerate() {
            for (id_b, set_b) in active.iter().skip(pos_a + 1) {
                let d = provider.dissimilarity(set_a, set_b)?;
                let candidate = (d, *id_a, *id_b);
                let better = match best {
                    None => true,
                    Some(current) => {
                        candidate.0 < current.0
                            || (candidate.0 == current.0
                                && (candidate.1, candidate.2) < (current.1, current.2))
                    }
                };
                if better {
                    best = Some(candidate);
                }
            }
        }
        let (height, left, right) = best.expect("at least one candidate pair");
        let pos_left = active.iter().position(|(id, _)| *id == left).expect("left active");
        let (_, set_left) = active.remove(pos_left);
        let pos_right = active.iter().position(|(id, _)| *id == right).expect("right active");
        let (_, set_right) = active.remove(pos_right);
        let union = set_left.union(&set_right)?;
        let new_id = m + step;
        merges.push(MergeRecord {
            left,
            right,
            height,
            new_id,
            members: union.indices().to_vec(),
        });
        active.push((new_id, union));
    }
    Dendrogram::new(merges, leaf_names)
}

/// Full clustering recipe: which measure to estimate and how to extend it to
/// sets of columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DissimilaritySpec {
    /// Pairwise matrix composed by a linkage method.
    Linkage {
        kind: MeasureKind,
        method: LinkageMethod,
    },
    /// Multivariate estimator recomputed on every candidate union.
    Global { kind: MeasureKind },
}

/// Ranks the data and runs the agglomeration under `spec`. Deterministic for
/// fixed input and spec.
pub fn run_clustering(data: &DataMatrix, spec: &DissimilaritySpec) -> Result<Dendrogram> {
    let pseudo = data.to_pseudo_observations();
    let names = data.column_names().to_vec();
    match spec {
        DissimilaritySpec::Linkage { kind, method } => {
            let matrix = pairwise_matrix(&pseudo, *kind)?;
            agglomerate(&LinkageProvider::new(&matrix, *method), names)
        }
        DissimilaritySpec::Global { kind } => {
            agglomerate(&GlobalProvider::new(&pseudo, *kind), names)
        }
    }
}
