//! Merge trees produced by agglomerative clustering and flat partitions cut
//! from them.
//!
//! Cluster ids follow the usual convention: leaves are `0..m-1`, the cluster
//! created by merge step `t` (0-based) gets id `m + t`. Heights are stored
//! exactly as the dissimilarity provider returned them; they are not forced
//! to be monotone because global-mode runs with the Spearman-type measure can
//! legitimately produce inversions. For the same reason trees are cut by
//! undoing merges, never by thresholding heights.

use crate::error::{Error, Result};

/// One agglomeration step: clusters `left` and `right` merged at `height`
/// into a new cluster `new_id` whose leaf set is `members` (sorted).
#[derive(Debug, Clone, PartialEq)]
pub struct MergeRecord {
    pub left: usize,
    pub right: usize,
    pub height: f64,
    pub new_id: usize,
    pub members: Vec<usize>,
}

/// Full merge history over `m` named leaves: exactly `m - 1` records.
#[derive(Debug, Clone, PartialEq)]
pub struct Dendrogram {
    merges: Vec<MergeRecord>,
    leaf_names: Vec<String>,
}

impl Dendrogram {
    /// Validates and wraps a merge sequence. Checks id conventions, member
    /// bookkeeping, and that the final cluster contains every leaf.
    pub fn new(merges: Vec<MergeRecord>, leaf_names: Vec<String>) -> Result<Self> {
        let m = leaf_names.len();
        if m < 2 {
            return Err(Error::TooFewColumns { got: m });
        }
        if merges.len() != m - 1 {
            return Err(Error::InvalidMergeSequence {
                reason: "expected exactly m - 1 merges",
            });
        }
        // members(id) for leaves is {id}; for merged clusters the recorded set.
        let mut members_of: Vec<Option<Vec<usize>>> = (0..m).map(|i| Some(vec![i])).collect();
        for (t, rec) in merges.iter().enumerate() {
            if rec.new_id != m + t {
                return Err(Error::InvalidMergeSequence {
                    reason: "merge ids must be m, m+1, ... in order",
                });
            }
            if rec.left >= rec.new_id || rec.right >= rec.new_id || rec.left == rec.right {
                return Err(Error::InvalidMergeSequence {
                    reason: "merge must join two distinct existing clusters",
                });
            }
            let left = members_of
                .get_mut(rec.left)
                .and_then(Option::take)
                .ok_or(Error::InvalidMergeSequence {
                    reason: "left cluster already consumed or unknown",
                })?;
            let right = members_of
                .get_mut(rec.right)
                .and_then(Option::take)
                .ok_or(Error::InvalidMergeSequence {
                    reason: "right cluster already consumed or unknown",
                })?;
            let mut union: Vec<usize> = left.iter().chain(right.iter()).copied().collect();
            union.sort_unstable();
            if union != rec.members {
                return Err(Error::InvalidMergeSequence {
                    reason: "recorded members differ from the union of the parts",
                });
            }
            members_of.push(Some(union));
        }
        let root = members_of.last().and_then(|m| m.as_ref());
        if root.map(Vec::len) != Some(m) {
            return Err(Error::InvalidMergeSequence {
                reason: "final cluster must contain every leaf",
            });
        }
        Ok(Self { merges, leaf_names })
    }

    pub fn merges(&self) -> &[MergeRecord] {
        &self.merges
    }

    pub fn leaf_names(&self) -> &[String] {
        &self.leaf_names
    }

    pub fn n_leaves(&self) -> usize {
        self.leaf_names.len()
    }

    /// Replaces the leaf names (count must match).
    pub fn with_leaf_names(mut self, leaf_names: Vec<String>) -> Result<Self> {
        if leaf_names.len() != self.leaf_names.len() {
            return Err(Error::NameCountMismatch {
                names: leaf_names.len(),
                cols: self.leaf_names.len(),
            });
        }
        self.leaf_names = leaf_names;
        Ok(self)
    }

    /// Cuts the tree into exactly `k` clusters by undoing the last `k - 1`
    /// merges in sequence order. Labels are 1..=k, assigned in order of each
    /// cluster's smallest member index.
    pub fn cut(&self, k: usize) -> Result<Partition> {
        let m = self.n_leaves();
        if k < 1 || k > m {
            return Err(Error::CutOutOfRange { k, leaves: m });
        }
        // Apply the first m - k merges to a union-find over the leaves.
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        // rep[id] = one leaf inside cluster `id`; merge ids are m + index,
        // so processing in order keeps every left/right id resolvable.
        let mut rep: Vec<usize> = (0..m).collect();
        for rec in &self.merges[..m - k] {
            let a = find(&mut parent, rep[rec.left]);
            let b = find(&mut parent, rep[rec.right]);
            parent[a] = b;
            rep.push(rec.members[0]);
        }
        let assignments: Vec<usize> = (0..m).map(|i| find(&mut parent, i)).collect();
        Ok(Partition::from_assignments(&assignments))
    }
}

/// Flat clustering of `m` items; labels form a surjection onto 1..=k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    labels: Vec<usize>,
}

impl Partition {
    /// Validates canonical labels: every label in 1..=k, all of 1..=k used.
    pub fn new(labels: Vec<usize>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidPartitionLabels { label: 0 });
        }
        let k = *labels.iter().max().expect("non-empty");
        let mut seen = vec![false; k + 1];
        for &l in &labels {
            if l == 0 {
                return Err(Error::InvalidPartitionLabels { label: 0 });
            }
            seen[l] = true;
        }
        if let Some(missing) = (1..=k).find(|&l| !seen[l]) {
            return Err(Error::InvalidPartitionLabels { label: missing });
        }
        Ok(Self { labels })
    }

    /// Builds a partition from arbitrary group keys, relabelling groups
    /// 1..=k in order of each group's smallest item index.
    pub fn from_assignments(assignments: &[usize]) -> Self {
        let mut labels = vec![0usize; assignments.len()];
        let mut next = 0usize;
        let mut label_of: Vec<(usize, usize)> = Vec::new(); // (key, label)
        for (i, &key) in assignments.iter().enumerate() {
            let label = match label_of.iter().find(|(k, _)| *k == key) {
                Some((_, l)) => *l,
                None => {
                    next += 1;
                    label_of.push((key, next));
                    next
                }
            };
            labels[i] = label;
        }
        Self { labels }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Number of distinct clusters.
    pub fn n_clusters(&self) -> usize {
        *self.labels.iter().max().unwrap_or(&0)
    }

    /// True when `other` is the same grouping up to a relabelling.
    pub fn same_grouping(&self, other: &Partition) -> bool {
        if self.labels.len() != other.labels.len() {
            return false;
        }
        Partition::from_assignments(&self.labels).labels
            == Partition::from_assignments(&other.labels).labels
    }
}
