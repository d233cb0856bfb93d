//! Dendrogram serialization: lossless JSON, Newick text, and partition CSV.

use copula_cluster::{Dendrogram, Partition};
use serde::Serialize;

/// JSON shape: `{ leaves: [names], merges: [{left, right, height}] }`.
/// Ids are implicit — leaves are `0..m-1` and merge `t` creates `m + t` — so
/// the full tree round-trips from this document.
#[derive(Serialize)]
struct JsonTree<'a> {
    leaves: &'a [String],
    merges: Vec<JsonMerge>,
}

#[derive(Serialize)]
struct JsonMerge {
    left: usize,
    right: usize,
    height: f64,
}

pub fn dendrogram_json(tree: &Dendrogram) -> String {
    let doc = JsonTree {
        leaves: tree.leaf_names(),
        merges: tree
            .merges()
            .iter()
            .map(|r| JsonMerge {
                left: r.left,
                right: r.right,
                height: r.height,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

/// Formats `x` with 9 significant digits in plain decimal notation.
pub fn sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (8 - exponent).max(0) as usize;
    format!("{:.*}", decimals, x)
}

/// Newick text with branch lengths. A child contributes the height gap to
/// its parent merge; leaves sit at height zero. Global-mode trees can carry
/// height inversions, which come out as negative branch lengths. Names that
/// contain Newick metacharacters are single-quoted.
pub fn newick(tree: &Dendrogram) -> String {
    let m = tree.n_leaves();
    let mut rendered: Vec<String> = tree
        .leaf_names()
        .iter()
        .map(|n| quote_if_needed(n))
        .collect();
    let mut heights: Vec<f64> = vec![0.0; m];
    for rec in tree.merges() {
        let left = format!("{}:{}", rendered[rec.left], sig9(rec.height - heights[rec.left]));
        let right = format!(
            "{}:{}",
            rendered[rec.right],
            sig9(rec.height - heights[rec.right])
        );
        rendered.push(format!("({left},{right})"));
        heights.push(rec.height);
    }
    format!("{};\n", rendered.last().expect("at least one cluster"))
}

fn quote_if_needed(name: &str) -> String {
    if name
        .chars()
        .any(|c| matches!(c, ',' | ';' | ':' | '(' | ')' | '[' | ']' | '\'' | '"' | ' '))
    {
        format!("'{}'", name.replace('\'', "''"))
    } else {
        name.to_string()
    }
}

/// Two-column CSV mapping each variable to its flat-cluster label.
pub fn partition_csv(names: &[String], partition: &Partition) -> String {
    let mut out = String::from("column_name,label\n");
    for (name, label) in names.iter().zip(partition.labels()) {
        out.push_str(&format!("{name},{label}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use copula_cluster::MergeRecord;

    fn tree() -> Dendrogram {
        Dendrogram::new(
            vec![
                MergeRecord {
                    left: 0,
                    right: 2,
                    height: 0.125,
                    new_id: 3,
                    members: vec![0, 2],
                },
                MergeRecord {
                    left: 3,
                    right: 1,
                    height: 0.25,
                    new_id: 4,
                    members: vec![0, 1, 2],
                },
            ],
            vec!["a".into(), "b".into(), "c".into()],
        )
        .unwrap()
    }

    #[test]
    fn sig9_has_nine_significant_digits() {
        assert_eq!(sig9(0.125), "0.125000000");
        assert_eq!(sig9(1.0 / 3.0), "0.333333333");
        assert_eq!(sig9(12.5), "12.5000000");
        assert_eq!(sig9(0.0), "0");
        assert_eq!(sig9(-0.015625), "-0.0156250000");
    }

    #[test]
    fn json_contains_leaves_and_heights() {
        let s = dendrogram_json(&tree());
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["leaves"][2], "c");
        assert_eq!(v["merges"][0]["left"], 0);
        assert_eq!(v["merges"][0]["right"], 2);
        assert_eq!(v["merges"][1]["height"], 0.25);
    }

    #[test]
    fn newick_encodes_height_gaps() {
        // a and c merge at 0.125; that cluster meets b at 0.25.
        assert_eq!(
            newick(&tree()),
            "((a:0.125000000,c:0.125000000):0.125000000,b:0.250000000);\n"
        );
    }

    #[test]
    fn newick_quotes_awkward_names() {
        assert_eq!(quote_if_needed("plain_name"), "plain_name");
        assert_eq!(quote_if_needed("has space"), "'has space'");
        assert_eq!(quote_if_needed("a:b"), "'a:b'");
    }

    #[test]
    fn partition_rows_follow_column_order() {
        let t = tree();
        let p = t.cut(2).unwrap();
        let csv = partition_csv(t.leaf_names(), &p);
        assert_eq!(csv, "column_name,label\na,1\nb,2\nc,1\n");
    }
}
