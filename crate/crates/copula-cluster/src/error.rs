//! Error type shared by every module of the crate.

/// Errors raised while validating inputs or composing clustering runs.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Fewer than two observations (rows).
    #[error("at least 2 observations are required, got {got}")]
    TooFewRows { got: usize },
    /// Fewer than two variables (columns).
    #[error("at least 2 variables are required, got {got}")]
    TooFewColumns { got: usize },
    /// A NaN or infinite entry in the input data.
    #[error("non-finite value at row {row}, column {col}")]
    NonFiniteValue { row: usize, col: usize },
    /// Rows of a data matrix have inconsistent lengths.
    #[error("row {row} has {got} values, expected {expected}")]
    RaggedRow {
        row: usize,
        got: usize,
        expected: usize,
    },
    /// Column-name count does not match the column count.
    #[error("{names} column names for {cols} columns")]
    NameCountMismatch { names: usize, cols: usize },
    /// A column set must contain at least one index.
    #[error("column set is empty")]
    EmptyColumnSet,
    /// A column index exceeds the matrix width.
    #[error("column index {index} out of bounds for {cols} columns")]
    ColumnOutOfBounds { index: usize, cols: usize },
    /// The same index appears twice in one column set.
    #[error("duplicate column index {index} in column set")]
    DuplicateColumn { index: usize },
    /// The two column sets of a dissimilarity query share an index.
    #[error("column sets overlap at index {index}")]
    OverlappingSets { index: usize },
    /// Lower-tail threshold outside 1..=n.
    #[error("tail threshold {k} out of range 1..={n}")]
    ThresholdOutOfRange { k: usize, n: usize },
    /// Requested cluster count outside 1..=m.
    #[error("cut size {k} out of range 1..={leaves} leaves")]
    CutOutOfRange { k: usize, leaves: usize },
    /// A point passed to the empirical copula has the wrong dimension.
    #[error("point has {got} coordinates, expected {expected}")]
    PointDimensionMismatch { expected: usize, got: usize },
    /// Two partitions being compared have different lengths.
    #[error("partition lengths differ: {left} vs {right}")]
    PartitionLengthMismatch { left: usize, right: usize },
    /// Partition labels are not a surjection onto 1..=k.
    #[error("partition labels must cover 1..=k with no gaps; offending label {label}")]
    InvalidPartitionLabels { label: usize },
    /// A dendrogram was built from an inconsistent merge sequence.
    #[error("invalid merge sequence: {reason}")]
    InvalidMergeSequence { reason: &'static str },
    /// Provider leaf count disagrees with the requested leaf names.
    #[error("provider covers {provider} leaves but {names} names were given")]
    LeafCountMismatch { provider: usize, names: usize },
    /// A pairwise matrix has a different width than the column sets assume.
    #[error("pairwise matrix is {dim}x{dim} but index {index} was requested")]
    MatrixIndexOutOfBounds { dim: usize, index: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
