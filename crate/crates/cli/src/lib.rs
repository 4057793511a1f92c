//! Command-line front end for `gpw-core`: spec-file parsing, command
//! dispatch and report rendering. The `gpw` binary is a thin wrapper.

pub mod commands;
pub mod report;
pub mod spec;

pub use commands::{run, Cli, CliError, Format, Outcome, Status};
pub use spec::{parse_spec, SpecError};
