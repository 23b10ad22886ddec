//! Driver for the `klatlas` command: configuration, the four subcommands,
//! and report encoding.

pub mod config;
pub mod report;
pub mod run;
pub mod table;

pub use config::{ConfigError, Format, RawConfig, RunConfig};
pub use report::RunReport;
pub use run::{exit_code, run, Command, RunError};
