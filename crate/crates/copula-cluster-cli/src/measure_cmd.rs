//! The `measure` subcommand: evaluate dissimilarities between two disjoint
//! groups of columns, with an optional normalized Kendall companion.

use anyhow::{bail, Context, Result};
use copula_cluster::{dissimilarity, kendall_kappa, ColumnSet, DataMatrix, MeasureKind};

use crate::cli_args::MeasureArg;
use crate::output::sig9;

/// Parses `"a,b|c"` into the two column sets. Tokens are matched against
/// column names first, then read as 1-based indices.
pub fn parse_set_pair(expr: &str, names: &[String]) -> Result<(ColumnSet, ColumnSet)> {
    let Some((left, right)) = expr.split_once('|') else {
        bail!("expected two column sets separated by '|', got {expr:?}");
    };
    Ok((parse_set(left, names)?, parse_set(right, names)?))
}

fn parse_set(expr: &str, names: &[String]) -> Result<ColumnSet> {
    let mut indices = Vec::new();
    for token in expr.split(',').map(str::trim) {
        if token.is_empty() {
            bail!("empty column token in set {expr:?}");
        }
        if let Some(pos) = names.iter().position(|n| n == token) {
            indices.push(pos);
        } else if let Ok(one_based) = token.parse::<usize>() {
            if one_based < 1 || one_based > names.len() {
                bail!(
                    "column index {one_based} out of range 1..={}",
                    names.len()
                );
            }
            indices.push(one_based - 1);
        } else {
            bail!("unknown column {token:?} (no such name, not an index)");
        }
    }
    ColumnSet::new(indices).context("invalid column set")
}

/// Evaluates every requested measure on `(A, B)` and renders a table. The
/// Kendall row gains a companion line with the per-dimension normalization;
/// that number is for reporting only and is never clustered on.
pub fn measure_table(
    data: &DataMatrix,
    a: &ColumnSet,
    b: &ColumnSet,
    measures: &[MeasureArg],
    tail_k: Option<usize>,
) -> Result<String> {
    let pseudo = data.to_pseudo_observations();
    let n = data.n_rows();
    let dim = a.len() + b.len();
    let mut out = String::from("measure\tvalue\n");
    for &arg in measures {
        let kind = arg.to_kind(n, tail_k);
        let d = dissimilarity(&pseudo, a, b, kind)?;
        out.push_str(&format!("{}\t{}\n", arg.label(), sig9(d)));
        if matches!(kind, MeasureKind::Kendall) {
            let kappa = kendall_kappa(d, dim);
            out.push_str(&format!("kappa[{dim}]\t{}\n", sig9(kappa)));
        }
    }
    Ok(out)
}
