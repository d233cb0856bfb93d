//! Monte-Carlo oracle: sampled dissimilarity estimates with batch
//! standard errors.
//!
//! The oracle splits the requested sample size into [`ORACLE_BATCHES`]
//! independent batches (derived seeds), runs the rank-based estimator on
//! each batch separately, and reports the batch mean together with the
//! standard error of that mean. For lower-tail measures the threshold is
//! rescaled per batch so each batch looks at the same tail quantile `k/n`
//! as the full-sample request.

use rayon::prelude::*;

use copula_cluster::{dissimilarity, ColumnSet, Error as CoreError, MeasureKind};

use crate::error::{LabError, Result};
use crate::sample::{derive_seed, sample_matrix};
use crate::spec::CopulaSpec;

/// Number of independent batches behind every oracle estimate.
pub const ORACLE_BATCHES: usize = 20;

/// A Monte-Carlo estimate with its batch-means standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    /// Mean of the per-batch estimates.
    pub value: f64,
    /// Standard error of the mean (batch standard deviation / √batches).
    pub std_error: f64,
    /// Number of batches combined.
    pub batches: usize,
}

/// Estimates the dissimilarity between variable sets `a` and `b` under
/// `spec` by sampling `n` total observations. Deterministic for fixed
/// arguments; batches run in parallel with derived seeds.
pub fn mc_oracle(
    spec: &CopulaSpec,
    a: &ColumnSet,
    b: &ColumnSet,
    kind: MeasureKind,
    n: usize,
    seed: u64,
) -> Result<McEstimate> {
    spec.validate()?;
    if n < 2 * ORACLE_BATCHES {
        return Err(LabError::OracleSampleTooSmall {
            min: 2 * ORACLE_BATCHES,
            got: n,
        });
    }
    if let MeasureKind::LowerTail { k } = kind {
        if k == 0 || k > n {
            return Err(LabError::Core(CoreError::ThresholdOutOfRange { k, n }));
        }
    }
    let base = n / ORACLE_BATCHES;
    let rem = n % ORACLE_BATCHES;
    let estimates = (0..ORACLE_BATCHES)
        .into_par_iter()
        .map(|i| -> Result<f64> {
            let batch_size = base + usize::from(i < rem);
            let batch_kind = match kind {
                MeasureKind::LowerTail { k } => {
                    // Keep the tail quantile k/n constant across batch sizes.
                    let scaled = (k as f64 * batch_size as f64 / n as f64).round() as usize;
                    MeasureKind::LowerTail {
                        k: scaled.clamp(1, batch_size),
                    }
                }
                other => other,
            };
            let m = sample_matrix(spec, batch_size, derive_seed(seed, i as u64))?;
            let p = m.to_pseudo_observations();
            Ok(dissimilarity(&p, a, b, batch_kind)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let nb = estimates.len() as f64;
    let mean = estimates.iter().sum::<f64>() / nb;
    let var = estimates.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (nb - 1.0);
    Ok(McEstimate {
        value: mean,
        std_error: (var / nb).sqrt(),
        batches: ORACLE_BATCHES,
    })
}
