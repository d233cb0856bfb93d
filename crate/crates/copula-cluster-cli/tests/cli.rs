//! End-to-end tests driving the real binary: exit codes, file formats,
//! determinism, and the degenerate simulation scenarios.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use copula_lab::{sample_matrix, CopulaSpec};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_copula-cluster"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_csv_from_spec(path: &Path, spec: &CopulaSpec, n: usize, seed: u64) {
    let data = sample_matrix(spec, n, seed).unwrap();
    let mut text = data.column_names().join(",");
    text.push('\n');
    for i in 0..data.n_rows() {
        let row: Vec<String> = (0..data.n_cols())
            .map(|j| format!("{:.12}", data.column(j)[i]))
            .collect();
        text.push_str(&row.join(","));
        text.push('\n');
    }
    fs::write(path, text).unwrap();
}

/// Drops the trailing wall-clock column so timing noise cannot affect
/// byte-level comparisons.
fn strip_wall_ms(csv: &str) -> String {
    csv.lines()
        .map(|line| match line.rsplit_once(',') {
            Some((rest, _)) => rest.to_string(),
            None => line.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn cluster_outputs_are_deterministic_and_well_formed() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("data.csv");
    write_csv_from_spec(&input, &CopulaSpec::clayton(4, 2.0).unwrap(), 80, 17);

    let out1 = dir.path().join("run1");
    let out2 = dir.path().join("run2");
    for out in [&out1, &out2] {
        let res = run(&[
            "cluster",
            "--input",
            input.to_str().unwrap(),
            "--output",
            out.to_str().unwrap(),
            "--measure",
            "kendall",
            "--mode",
            "average",
            "--cut-k",
            "2",
        ]);
        assert!(res.status.success(), "{}", stderr_of(&res));
    }
    for ext in ["json", "nwk", "partition.csv"] {
        let a = fs::read(format!("{}.{ext}", out1.display())).unwrap();
        let b = fs::read(format!("{}.{ext}", out2.display())).unwrap();
        assert_eq!(a, b, "{ext} outputs differ between identical runs");
    }

    // JSON schema: leaves + m-1 merges, ids within range.
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(format!("{}.json", out1.display())).unwrap())
            .unwrap();
    let leaves = json["leaves"].as_array().unwrap();
    let merges = json["merges"].as_array().unwrap();
    assert_eq!(leaves.len(), 4);
    assert_eq!(merges.len(), 3);
    for (t, merge) in merges.iter().enumerate() {
        let left = merge["left"].as_u64().unwrap() as usize;
        let right = merge["right"].as_u64().unwrap() as usize;
        assert!(left < 4 + t && right < 4 + t && left != right);
        assert!(merge["height"].is_number());
    }

    // Newick: one line, terminated, balanced, every column name present.
    let nwk = fs::read_to_string(format!("{}.nwk", out1.display())).unwrap();
    assert!(nwk.ends_with(";\n"));
    assert_eq!(nwk.matches('(').count(), nwk.matches(')').count());
    for name in ["v1", "v2", "v3", "v4"] {
        assert!(nwk.contains(name), "{nwk}");
    }

    // Partition CSV: header plus one row per column.
    let part = fs::read_to_string(format!("{}.partition.csv", out1.display())).unwrap();
    let lines: Vec<&str> = part.lines().collect();
    assert_eq!(lines[0], "column_name,label");
    assert_eq!(lines.len(), 5);
}

#[test]
fn duplicated_columns_cluster_at_height_zero() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("dup.csv");
    let mut text = String::from("a,b,c\n");
    for i in 0..40 {
        let x = (i as f64 * 0.37).sin();
        text.push_str(&format!("{x:.9},{:.9},{:.9}\n", 2.0 * x + 1.0, x.powi(3)));
    }
    fs::write(&input, text).unwrap();
    let out = dir.path().join("dup_out");
    let res = run(&[
        "cluster",
        "--input",
        input.to_str().unwrap(),
        "--output",
        out.to_str().unwrap(),
        "--measure",
        "kendall",
        "--mode",
        "complete",
    ]);
    assert!(res.status.success(), "{}", stderr_of(&res));
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(format!("{}.json", out.display())).unwrap())
            .unwrap();
    for merge in json["merges"].as_array().unwrap() {
        let h = merge["height"].as_f64().unwrap();
        assert!(h.abs() <= 0.05, "height {h} should be ~0 for duplicates");
    }
}

#[test]
fn non_numeric_cell_reports_row_and_column_and_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.csv");
    fs::write(&input, "a,b\n1.0,2.0\n3.0,four\n").unwrap();
    let out = dir.path().join("never");
    let res = run(&[
        "cluster",
        "--input",
        input.to_str().unwrap(),
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(2));
    let err = stderr_of(&res);
    assert!(err.contains("row 2"), "{err}");
    assert!(err.contains("column 2"), "{err}");
    assert!(!Path::new(&format!("{}.json", out.display())).exists());
}

#[test]
fn ties_warn_on_stderr_but_succeed() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("ties.csv");
    let mut text = String::from("a,b\n");
    for i in 0..20 {
        // Column a has a deliberate tie at the top.
        let x = if i < 2 { 5.0 } else { i as f64 };
        text.push_str(&format!("{x},{}\n", (i as f64 * 1.3).cos()));
    }
    fs::write(&input, text).unwrap();
    let out = dir.path().join("ties_out");
    let res = run(&[
        "cluster",
        "--input",
        input.to_str().unwrap(),
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(res.status.success());
    let err = stderr_of(&res);
    assert!(err.contains("ties") && err.contains("column(s) a"), "{err}");
}

#[test]
fn cut_k_out_of_range_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("data.csv");
    write_csv_from_spec(&input, &CopulaSpec::independence(3).unwrap(), 30, 5);
    let res = run(&[
        "cluster",
        "--input",
        input.to_str().unwrap(),
        "--output",
        dir.path().join("x").to_str().unwrap(),
        "--cut-k",
        "9",
    ]);
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn simulate_is_deterministic_and_split_runs_concatenate() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sim.toml");
    fs::write(
        &config,
        "family = \"clayton\"\ntau = [0.5]\nn = [40]\nb = 4\nseed = 11\n\
         design = { kind = \"blocks\", m = 6, k = 3 }\n\
         methods = [\"kendall-average\", \"beta-single\"]\n",
    )
    .unwrap();
    let out1 = dir.path().join("a.csv");
    let out2 = dir.path().join("b.csv");
    for out in [&out1, &out2] {
        let res = run(&[
            "simulate",
            "--config",
            config.to_str().unwrap(),
            "--output",
            out.to_str().unwrap(),
        ]);
        assert!(res.status.success(), "{}", stderr_of(&res));
    }
    let full1 = strip_wall_ms(&fs::read_to_string(&out1).unwrap());
    let full2 = strip_wall_ms(&fs::read_to_string(&out2).unwrap());
    assert_eq!(full1, full2, "same config must give identical rows");

    // b=4 must equal two b=2 runs at offsets 0 and 2, stitched.
    let mut stitched = String::new();
    for offset in [0, 2] {
        let cfg = dir.path().join(format!("part{offset}.toml"));
        fs::write(
            &cfg,
            format!(
                "family = \"clayton\"\ntau = [0.5]\nn = [40]\nb = 2\nseed = 11\n\
                 rep_offset = {offset}\n\
                 design = {{ kind = \"blocks\", m = 6, k = 3 }}\n\
                 methods = [\"kendall-average\", \"beta-single\"]\n"
            ),
        )
        .unwrap();
        let out = dir.path().join(format!("part{offset}.csv"));
        let res = run(&[
            "simulate",
            "--config",
            cfg.to_str().unwrap(),
            "--output",
            out.to_str().unwrap(),
        ]);
        assert!(res.status.success(), "{}", stderr_of(&res));
        let text = fs::read_to_string(&out).unwrap();
        let body = text.split_once('\n').unwrap().1;
        if stitched.is_empty() {
            stitched = text.split_once('\n').unwrap().0.to_string();
            stitched.push('\n');
        }
        stitched.push_str(body);
    }
    assert_eq!(full1, strip_wall_ms(stitched.trim_end()));
}

#[test]
fn simulate_seed_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sim.toml");
    fs::write(
        &config,
        "family = \"gumbel\"\ntau = [0.4]\nn = [30]\nb = 2\nseed = 1\n\
         design = { kind = \"blocks\", m = 4, k = 2 }\nmethods = [\"kendall-average\"]\n",
    )
    .unwrap();
    let base = run(&["simulate", "--config", config.to_str().unwrap()]);
    let reseeded = run(&[
        "simulate",
        "--config",
        config.to_str().unwrap(),
        "--seed",
        "99",
    ]);
    assert!(base.status.success() && reseeded.status.success());
    assert_ne!(base.stdout, reseeded.stdout);
}

#[test]
fn comonotone_degenerate_study_recovers_everything() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sim.toml");
    fs::write(
        &config,
        "family = \"comonotone\"\ntau = [0.5]\nn = [25]\nb = 1\nseed = 3\n\
         design = { kind = \"blocks\", m = 8, k = 4 }\n\
         methods = [\"beta-single\", \"footrule-average\", \"kendall-complete\", \
                    \"spearman-average\", \"ltd-average\", \"kendall-global\"]\n",
    )
    .unwrap();
    let res = run(&["simulate", "--config", config.to_str().unwrap()]);
    assert!(res.status.success(), "{}", stderr_of(&res));
    let text = String::from_utf8_lossy(&res.stdout);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 6);
    for row in rows {
        let ari: f64 = row.split(',').nth(5).unwrap().parse().unwrap();
        assert_eq!(ari, 1.0, "{row}");
    }
}

#[test]
fn unknown_config_key_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sim.toml");
    fs::write(
        &config,
        "family = \"clayton\"\ntau = [0.5]\nn = [40]\nb = 1\nseed = 1\nturbo = true\n\
         design = { kind = \"random3\" }\nmethods = [\"kendall-average\"]\n",
    )
    .unwrap();
    let res = run(&["simulate", "--config", config.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(2));
    assert!(stderr_of(&res).contains("turbo"));
}

#[test]
fn measure_reports_values_and_rejects_overlap() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("pi.csv");
    write_csv_from_spec(&input, &CopulaSpec::independence(3).unwrap(), 4000, 23);

    let ok = run(&[
        "measure",
        "--input",
        input.to_str().unwrap(),
        "--sets",
        "v1|v2",
        "--measure",
        "beta,kendall",
    ]);
    assert!(ok.status.success(), "{}", stderr_of(&ok));
    let table = String::from_utf8_lossy(&ok.stdout).into_owned();
    let beta: f64 = table
        .lines()
        .find(|l| l.starts_with("beta"))
        .and_then(|l| l.split('\t').nth(1))
        .unwrap()
        .parse()
        .unwrap();
    assert!((beta - 0.25).abs() < 0.03, "beta on independent pair: {beta}");
    assert!(table.contains("kappa[2]"), "{table}");

    let overlap = run(&[
        "measure",
        "--input",
        input.to_str().unwrap(),
        "--sets",
        "v1,v2|v2",
    ]);
    assert_eq!(overlap.status.code(), Some(2));
}

#[test]
fn measure_on_duplicated_columns_is_near_zero() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("dup.csv");
    let mut text = String::from("a,b\n");
    for i in 0..50 {
        let x = ((i * 7 % 50) as f64).sqrt();
        text.push_str(&format!("{x:.9},{x:.9}\n"));
    }
    fs::write(&input, text).unwrap();
    let res = run(&[
        "measure",
        "--input",
        input.to_str().unwrap(),
        "--sets",
        "a|b",
        "--measure",
        "beta,footrule,kendall,ltd",
    ]);
    assert!(res.status.success());
    let text = String::from_utf8_lossy(&res.stdout).into_owned();
    for line in text.lines().skip(1) {
        let v: f64 = line.split('\t').nth(1).unwrap().parse().unwrap();
        if line.starts_with("kappa") {
            // The agreement companion points the other way: 1 for comonotone.
            assert!((v - 1.0).abs() < 0.06, "{line}");
        } else {
            assert!(v.abs() < 0.03, "{line}");
        }
    }
}

#[test]
fn missing_header_is_effectively_rejected() {
    // A single data row: the first line is always consumed as the header,
    // so a headerless two-row numeric file leaves n = 1 < 2.
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("nohdr.csv");
    fs::write(&input, "1.0,2.0\n3.0,4.0\n").unwrap();
    let res = run(&[
        "cluster",
        "--input",
        input.to_str().unwrap(),
        "--output",
        dir.path().join("x").to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn threads_flag_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sim.toml");
    fs::write(
        &config,
        "family = \"frank\"\ntau = [0.3]\nn = [30]\nb = 3\nseed = 21\n\
         design = { kind = \"blocks\", m = 6, k = 2 }\nmethods = [\"kendall-average\"]\n",
    )
    .unwrap();
    let one = run(&[
        "simulate",
        "--config",
        config.to_str().unwrap(),
        "--threads",
        "1",
    ]);
    let two = run(&[
        "simulate",
        "--config",
        config.to_str().unwrap(),
        "--threads",
        "2",
    ]);
    assert!(one.status.success() && two.status.success());
    assert_eq!(
        strip_wall_ms(&String::from_utf8_lossy(&one.stdout)),
        strip_wall_ms(&String::from_utf8_lossy(&two.stdout))
    );
    // Env var fallback also parses.
    let via_env = bin()
        .args(["simulate", "--config", config.to_str().unwrap()])
        .env("COPULA_CLUSTER_THREADS", "1")
        .output()
        .unwrap();
    assert!(via_env.status.success(), "{}", stderr_of(&via_env));
}
