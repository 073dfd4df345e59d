//! File formats, reports and the command-line front end for `tdlc-core`.

pub mod cli;
pub mod dot;
mod error;
pub mod input;
pub mod report;

pub use error::CliError;
