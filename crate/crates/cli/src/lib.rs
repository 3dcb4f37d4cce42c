//! Command-line front end for `dcent-core` plus the benchmark harness.

pub mod args;
pub mod bench;
pub mod commands;
pub mod error;
pub mod output;

pub use args::Cli;
pub use bench::{run_benchmark, select_top_vertices, BenchConfig, BenchOptions, BenchReport, BenchRow};
pub use commands::run;
pub use error::{CliError, CliResult};
