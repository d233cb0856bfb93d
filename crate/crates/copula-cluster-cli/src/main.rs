//! Binary entry point: argument parsing and dispatch. Exit codes: 0 on
//! success, 2 on any usage or data error.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use copula_cluster_cli::cli_args::{MeasureArg, ModeArg};
use copula_cluster_cli::ingest::read_csv;
use copula_cluster_cli::measure_cmd::{measure_table, parse_set_pair};
use copula_cluster_cli::sim::{render_csv, run_simulation, SimConfig};
use copula_cluster_cli::cluster_cmd;

#[derive(Parser)]
#[command(
    name = "copula-cluster",
    version,
    about = "Rank-based dependence clustering of continuous variables"
)]
struct Cli {
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true, env = "COPULA_CLUSTER_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cluster the columns of a CSV file and write dendrogram files.
    Cluster {
        /// Input CSV (header row mandatory, numeric cells).
        #[arg(long)]
        input: PathBuf,
        /// Output prefix: writes <prefix>.json, <prefix>.nwk, and
        /// <prefix>.partition.csv when --cut-k is given.
        #[arg(long)]
        output: PathBuf,
        /// Dependence measure to cluster on.
        #[arg(long, value_enum, default_value = "kendall")]
        measure: MeasureArg,
        /// Linkage composition or global multivariate mode.
        #[arg(long, value_enum, default_value = "average")]
        mode: ModeArg,
        /// Lower-tail threshold count (default: floor(sqrt(n))).
        #[arg(long)]
        tail_k: Option<usize>,
        /// Also cut the tree into this many flat clusters.
        #[arg(long)]
        cut_k: Option<usize>,
    },
    /// Run a seeded replication study from a TOML config.
    Simulate {
        /// Study configuration (TOML).
        #[arg(long)]
        config: PathBuf,
        /// Output CSV path (default: standard output).
        #[arg(long)]
        output: Option<PathBuf>,
        /// Override the config's base seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print dissimilarities between two disjoint column sets.
    Measure {
        /// Input CSV (header row mandatory, numeric cells).
        #[arg(long)]
        input: PathBuf,
        /// Two column sets separated by '|', columns by name or 1-based
        /// index, e.g. "x1,x2|x3".
        #[arg(long)]
        sets: String,
        /// Measures to evaluate (comma-separated).
        #[arg(
            long,
            value_enum,
            value_delimiter = ',',
            default_values = ["beta", "footrule", "kendall", "spearman", "ltd"]
        )]
        measure: Vec<MeasureArg>,
        /// Lower-tail threshold count (default: floor(sqrt(n))).
        #[arg(long)]
        tail_k: Option<usize>,
    },
}

fn run(cli: Cli) -> Result<()> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("cannot configure the thread pool")?;
    }
    match cli.command {
        Command::Cluster {
            input,
            output,
            measure,
            mode,
            tail_k,
            cut_k,
        } => cluster_cmd::run(&input, &output, measure, mode, tail_k, cut_k),
        Command::Simulate {
            config,
            output,
            seed,
        } => {
            let mut config = SimConfig::load(&config)?;
            if let Some(seed) = seed {
                config.seed = seed;
            }
            let rows = run_simulation(&config)?;
            let csv = render_csv(&rows);
            match output {
                Some(path) => std::fs::write(&path, csv)
                    .with_context(|| format!("cannot write {}", path.display()))?,
                None => print!("{csv}"),
            }
            Ok(())
        }
        Command::Measure {
            input,
            sets,
            measure,
            tail_k,
        } => {
            let data = read_csv(&input)?;
            let (a, b) = parse_set_pair(&sets, data.column_names())?;
            let table = measure_table(&data, &a, &b, &measure, tail_k)?;
            print!("{table}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
