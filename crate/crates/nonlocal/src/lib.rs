//! File formats, parallel classical search and the `nonlocal` command-line tool
//! on top of [`nonlocal_core`].

pub mod cli;
pub mod document;
pub mod error;
pub mod search;

pub use error::{CliError, CliResult};
