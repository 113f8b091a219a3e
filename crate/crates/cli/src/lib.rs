//! Configuration ingestion, command dispatch and JSON reporting for the
//! partial coaction workbench.

pub mod config;
pub mod error;
pub mod report;
pub mod run;

pub use config::{parse_config, Config, Overrides};
pub use error::{CliError, Result};
pub use report::Report;
pub use run::{execute, Command};
