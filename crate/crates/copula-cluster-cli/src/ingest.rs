//! CSV ingestion: numeric columns under a mandatory header row.

use anyhow::{bail, Context, Result};
use copula_cluster::DataMatrix;
use std::path::Path;

/// Reads a comma-separated file with a header row into a data matrix.
/// Non-numeric cells are reported with their 1-based data row and column.
pub fn read_csv(path: &Path) -> Result<DataMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("cannot open {}", path.display()))?;
    let names: Vec<String> = reader
        .headers()
        .context("cannot read the header row")?
        .iter()
        .map(str::to_owned)
        .collect();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.with_context(|| format!("malformed CSV at data row {}", i + 1))?;
        if record.len() != names.len() {
            bail!(
                "data row {} has {} fields, expected {} (per the header)",
                i + 1,
                record.len(),
                names.len()
            );
        }
        let mut row = Vec::with_capacity(names.len());
        for (j, cell) in record.iter().enumerate() {
            let value: f64 = cell.parse().map_err(|_| {
                anyhow::anyhow!(
                    "non-numeric value {:?} at data row {}, column {} ({})",
                    cell,
                    i + 1,
                    j + 1,
                    names[j]
                )
            })?;
            row.push(value);
        }
        rows.push(row);
    }
    DataMatrix::from_rows(rows, names).context("invalid data matrix")
}

/// Prints a warning to standard error naming every column with tied values.
pub fn warn_about_ties(data: &DataMatrix) {
    let pseudo = data.to_pseudo_observations();
    let tied: Vec<&str> = pseudo
        .tie_flags()
        .iter()
        .zip(data.column_names())
        .filter(|(flag, _)| **flag)
        .map(|(_, name)| name.as_str())
        .collect();
    if !tied.is_empty() {
        eprintln!(
            "warning: ties detected in column(s) {}; mid-ranks are used, \
             continuous-data guarantees may degrade",
            tied.join(", ")
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn reads_simple_csv() {
        let f = write_temp("a,b\n1.0,2.0\n3.5,-0.25\n");
        let d = read_csv(f.path()).unwrap();
        assert_eq!(d.n_rows(), 2);
        assert_eq!(d.column_names(), &["a".to_string(), "b".to_string()]);
        assert_eq!(d.column(1), &[2.0, -0.25]);
    }

    #[test]
    fn reports_bad_cell_with_row_and_column() {
        let f = write_temp("a,b\n1.0,2.0\n3.5,oops\n");
        let err = read_csv(f.path()).unwrap_err().to_string();
        assert!(err.contains("row 2"), "{err}");
        assert!(err.contains("column 2"), "{err}");
        assert!(err.contains("oops"), "{err}");
    }

    #[test]
    fn rejects_ragged_record() {
        let f = write_temp("a,b\n1.0,2.0\n3.5\n");
        assert!(read_csv(f.path()).is_err());
    }
}
