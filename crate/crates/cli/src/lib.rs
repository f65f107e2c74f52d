//! Batch front end: group description files in, deterministic reports out.

pub mod args;
pub mod commands;
pub mod input;
pub mod output;

pub use args::{Claim, Cli, Command, Flags, PolyfunCommand};
pub use commands::{run, CliError};
pub use input::{parse_group_file, read_group_file, GroupFile, GroupInput, InputError};
pub use output::{canonical, exit_code, Format, Report};
