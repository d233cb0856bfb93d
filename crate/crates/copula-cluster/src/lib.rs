//! Rank-based dependence dissimilarities and agglomerative clustering of
//! continuous variables.
//!
//! The pipeline is: rank the raw data into pseudo-observations
//! ([`DataMatrix::to_pseudo_observations`]), estimate a dependence
//! dissimilarity between groups of columns (the [`empirical`] module offers
//! medial, footrule, Kendall, Spearman, and lower-tail families), and merge
//! the closest groups agglomeratively ([`cluster`]). Group dissimilarities
//! come either from linkage compositions of the pairwise matrix, which only
//! ever see bivariate margins, or from re-estimating the multivariate
//! measure on each candidate union, which can detect dependence invisible to
//! every pairwise method.
//!
//! Because everything is computed from ranks, results are exactly invariant
//! under strictly increasing transforms of each variable.

pub mod cluster;
pub mod data;
pub mod dendrogram;
pub mod empirical;
pub mod error;
pub mod eval;
pub mod linkage;

pub use cluster::{
    agglomerate, run_clustering, DissimilarityProvider, DissimilaritySpec, GlobalProvider,
    LinkageProvider,
};
pub use data::{DataMatrix, PseudoObsMatrix};
pub use dendrogram::{Dendrogram, MergeRecord, Partition};
pub use empirical::{
    diss_beta, diss_footrule, diss_kendall, diss_ltd, diss_spearman, dissimilarity,
    empirical_copula_at, kendall_kappa, pairwise_matrix, ColumnSet, MeasureKind, PairwiseMatrix,
};
pub use error::{Error, Result};
pub use eval::{adjusted_rand_index, rand_index, AdjustedRand};
pub use linkage::{linkage_dissimilarity, LinkageMethod};
