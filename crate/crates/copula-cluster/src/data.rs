//! Data matrices and the rank transform to pseudo-observations.
//!
//! Variables live in columns, observations in rows. All dissimilarity
//! estimators in this crate operate on [`PseudoObsMatrix`], the per-column
//! rank transform of a [`DataMatrix`]: entry `(i, j)` becomes `R_ij / (n+1)`
//! where `R_ij` is the mid-rank of `x_ij` within column `j`. Dividing by
//! `n + 1` instead of `n` keeps every entry strictly inside `(0, 1)`, which
//! the tail estimator relies on. Ties are resolved by mid-ranks and recorded
//! per column so callers can warn about them.

use crate::error::{Error, Result};

/// Immutable n×m matrix of finite real observations with named columns.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    columns: Vec<Vec<f64>>,
    column_names: Vec<String>,
    n_rows: usize,
}

impl DataMatrix {
    /// Builds a matrix from column vectors. Requires n ≥ 2 rows, m ≥ 2
    /// columns, equal column lengths, finite entries, and one name per column.
    pub fn from_columns(columns: Vec<Vec<f64>>, column_names: Vec<String>) -> Result<Self> {
        if columns.len() < 2 {
            return Err(Error::TooFewColumns { got: columns.len() });
        }
        if column_names.len() != columns.len() {
            return Err(Error::NameCountMismatch {
                names: column_names.len(),
                cols: columns.len(),
            });
        }
        let n_rows = columns[0].len();
        if n_rows < 2 {
            return Err(Error::TooFewRows { got: n_rows });
        }
        for (j, col) in columns.iter().enumerate() {
            if col.len() != n_rows {
                return Err(Error::RaggedRow {
                    row: j,
                    got: col.len(),
                    expected: n_rows,
                });
            }
            for (i, v) in col.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFiniteValue { row: i, col: j });
                }
            }
        }
        Ok(Self {
            columns,
            column_names,
            n_rows,
        })
    }

    /// Builds a matrix from row vectors (the natural CSV orientation).
    pub fn from_rows(rows: Vec<Vec<f64>>, column_names: Vec<String>) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::TooFewRows { got: rows.len() });
        }
        let m = column_names.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::RaggedRow {
                    row: i,
                    got: row.len(),
                    expected: m,
                });
            }
        }
        let mut columns = vec![Vec::with_capacity(rows.len()); m];
        for row in &rows {
            for (j, v) in row.iter().enumerate() {
                columns[j].push(*v);
            }
        }
        Self::from_columns(columns, column_names)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.columns[j]
    }

    pub fn column_names(&self) -> &[String] {
        &self.column_names
    }

    /// Rank-transforms every column into pseudo-observations.
    pub fn to_pseudo_observations(&self) -> PseudoObsMatrix {
        let n = self.n_rows;
        let denom = n as f64 + 1.0;
        let mut u = Vec::with_capacity(self.columns.len());
        let mut tie_flags = Vec::with_capacity(self.columns.len());
        for col in &self.columns {
            let (ranks, ties) = midranks(col);
            u.push(ranks.iter().map(|r| r / denom).collect());
            tie_flags.push(ties);
        }
        PseudoObsMatrix { u, tie_flags, n }
    }
}

/// Mid-ranks of a column, 1-based; the flag reports whether ties occurred.
fn midranks(col: &[f64]) -> (Vec<f64>, bool) {
    let n = col.len();
    let mut order: Vec<usize> = (0..n).collect();
    // Finiteness is guaranteed by the DataMatrix invariants.
    order.sort_by(|&a, &b| col[a].partial_cmp(&col[b]).expect("finite values"));
    let mut ranks = vec![0.0; n];
    let mut ties = false;
    let mut start = 0;
    while start < n {
        let mut end = start;
        while end + 1 < n && col[order[end + 1]] == col[order[start]] {
            end += 1;
        }
        if end > start {
            ties = true;
        }
        // Average of the 1-based rank positions start+1 ..= end+1.
        let mid = (start + end) as f64 / 2.0 + 1.0;
        for &idx in &order[start..=end] {
            ranks[idx] = mid;
        }
        start = end + 1;
    }
    (ranks, ties)
}

/// Column-wise pseudo-observations: entries `R/(n+1)` strictly inside (0, 1).
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoObsMatrix {
    u: Vec<Vec<f64>>,
    tie_flags: Vec<bool>,
    n: usize,
}

impl PseudoObsMatrix {
    pub fn n_rows(&self) -> usize {
        self.n
    }

    pub fn n_cols(&self) -> usize {
        self.u.len()
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.u[j]
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.u[j][i]
    }

    /// Per-column flags: true where the raw column contained ties.
    pub fn tie_flags(&self) -> &[bool] {
        &self.tie_flags
    }

    pub fn any_ties(&self) -> bool {
        self.tie_flags.iter().any(|&t| t)
    }
}
