//! Agreement indices between two flat partitions of the same items.

use std::collections::HashMap;

use crate::dendrogram::Partition;
use crate::error::{Error, Result};

fn check_lengths(p: &Partition, q: &Partition) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::PartitionLengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(())
}

/// Rand index: the fraction of item pairs on which the two partitions agree
/// (both together or both apart). In [0, 1].
pub fn rand_index(p: &Partition, q: &Partition) -> Result<f64> {
    check_lengths(p, q)?;
    let n = p.len();
    let (pl, ql) = (p.labels(), q.labels());
    let mut agree = 0u64;
    for i in 0..n {
        for j in (i + 1)..n {
            let same_p = pl[i] == pl[j];
            let same_q = ql[i] == ql[j];
            if same_p == same_q {
                agree += 1;
            }
        }
    }
    let total = (n * (n - 1) / 2) as f64;
    Ok(agree as f64 / total)
}

/// Adjusted Rand index with its degenerate-denominator flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdjustedRand {
    pub value: f64,
    /// True when the expected index equals the maximum index (e.g. both
    /// partitions all-singletons or both one cluster); the value is then 0
    /// by convention.
    pub degenerate: bool,
}

/// Adjusted Rand index under the permutation model: the pair-count index
/// recentred at its expectation and rescaled by the maximum. Equals 1 iff
/// the partitions are identical up to relabelling; 0 in the degenerate case.
pub fn adjusted_rand_index(p: &Partition, q: &Partition) -> Result<AdjustedRand> {
    check_lengths(p, q)?;
    let n = p.len();
    let mut joint: HashMap<(usize, usize), u64> = HashMap::new();
    let mut rows: HashMap<usize, u64> = HashMap::new();
    let mut cols: HashMap<usize, u64> = HashMap::new();
    for (&a, &b) in p.labels().iter().zip(q.labels()) {
        *joint.entry((a, b)).or_insert(0) += 1;
        *rows.entry(a).or_insert(0) += 1;
        *cols.entry(b).or_insert(0) += 1;
    }
    fn choose2(c: u64) -> f64 {
        (c * c.saturating_sub(1)) as f64 / 2.0
    }
    let index: f64 = joint.values().map(|&c| choose2(c)).sum();
    let row_sum: f64 = rows.values().map(|&c| choose2(c)).sum();
    let col_sum: f64 = cols.values().map(|&c| choose2(c)).sum();
    let total = choose2(n as u64);
    let expected = row_sum * col_sum / total;
    let maximum = (row_sum + col_sum) / 2.0;
    if maximum == expected {
        return Ok(AdjustedRand {
            value: 0.0,
            degenerate: true,
        });
    }
    Ok(AdjustedRand {
        value: (index - expected) / (maximum - expected),
        degenerate: false,
    })
}
