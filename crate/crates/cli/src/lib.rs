//! Suite harness for the matrix-inequality checkers: configuration,
//! registry expansion, seeded execution, and machine-readable reports.

pub mod config;
pub mod registry;
pub mod report;
pub mod suite;

pub use config::{ConfigLayer, SuiteConfig, UsageError};
pub use report::emit_report;
pub use suite::{run_suite, EntryReport, SuiteReport};
