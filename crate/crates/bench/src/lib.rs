//! Benchmark harness: runs transforms over test problems, renders the
//! resulting error tables and checks them against stored expectations.

pub mod config;
pub mod error;
pub mod export;
pub mod fixture;
pub mod registry;
pub mod report;

pub use config::{BandPolicy, ConfigFile, Format, RunConfig};
pub use error::BenchError;
pub use fixture::{check_fixture, load_fixture, run_fixture, CheckSummary, FixtureRow};
pub use report::{run, BenchmarkReport, ReportRow, RowStatus};
