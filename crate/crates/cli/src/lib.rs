//! Command-line driver: spec and config ingestion, the branch run, and report emission.

pub mod config;
pub mod error;
pub mod report;
pub mod run;
pub mod spec_file;

pub use error::{CliError, ParseError};
