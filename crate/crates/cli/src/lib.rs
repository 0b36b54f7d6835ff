//! Parsers, printers and command dispatch for the `conspec` binary.

pub mod commands;
pub mod parse;
pub mod print;
pub mod report;
pub mod selftest;

pub use commands::{run, CliError, Command, SperCommand};
pub use report::{Line, Report};
