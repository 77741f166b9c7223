//! Verification harness over `hankelff-core`: report formats, the census
//! cache, a worker pool for the partitionable enumerations, and the
//! reconciliation suites behind the `hankelff` binary.

pub mod cache;
pub mod config;
pub mod format;
pub mod pool;
pub mod report;
pub mod suites;

pub use config::{Command, FieldArgs, Format, RunConfig, SpanArg};
pub use report::Report;
pub use suites::{run, RunError};
