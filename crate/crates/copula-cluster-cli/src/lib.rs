//! Command-line front end: CSV ingestion, clustering runs with dendrogram
//! export, direct dissimilarity measurement, and the seeded simulation
//! harness. The binary in `main.rs` is a thin argument-parsing shell over
//! this library so integration tests can drive the same code paths.

pub mod cli_args;
pub mod cluster_cmd;
pub mod ingest;
pub mod measure_cmd;
pub mod output;
pub mod sim;
