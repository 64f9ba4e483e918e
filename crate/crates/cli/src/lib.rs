//! Library side of the `dnacrypt` command-line tool.

pub mod bench;
pub mod container;
pub mod error;
pub mod ops;
pub mod report;

pub use error::{CliError, CliResult};
