//! The `cluster` subcommand: CSV in, dendrogram files out.

use anyhow::{Context, Result};
use copula_cluster::run_clustering;
use std::fs;
use std::path::Path;

use crate::cli_args::{MeasureArg, ModeArg};
use crate::ingest::{read_csv, warn_about_ties};
use crate::output::{dendrogram_json, newick, partition_csv};

/// Clusters the columns of `input` and writes `<output>.json` and
/// `<output>.nwk`, plus `<output>.partition.csv` when `cut_k` is given.
pub fn run(
    input: &Path,
    output_prefix: &Path,
    measure: MeasureArg,
    mode: ModeArg,
    tail_k: Option<usize>,
    cut_k: Option<usize>,
) -> Result<()> {
    let data = read_csv(input)?;
    warn_about_ties(&data);
    let kind = measure.to_kind(data.n_rows(), tail_k);
    let spec = mode.to_spec(kind);
    let tree = run_clustering(&data, &spec)?;

    let prefix = output_prefix.as_os_str().to_string_lossy();
    let json_path = format!("{prefix}.json");
    let nwk_path = format!("{prefix}.nwk");
    fs::write(&json_path, dendrogram_json(&tree))
        .with_context(|| format!("cannot write {json_path}"))?;
    fs::write(&nwk_path, newick(&tree)).with_context(|| format!("cannot write {nwk_path}"))?;
    if let Some(k) = cut_k {
        let part = tree.cut(k)?;
        let part_path = format!("{prefix}.partition.csv");
        fs::write(&part_path, partition_csv(tree.leaf_names(), &part))
            .with_context(|| format!("cannot write {part_path}"))?;
    }
    Ok(())
}
