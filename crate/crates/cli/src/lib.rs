//! Command-line front end: expression parsing, subcommand dispatch, JSON I/O.

use std::ffi::OsString;

/// Run the CLI with the given arguments; returns the process exit code.
pub fn run<I, T>(_args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    eprintln!("invalid-input: command-line interface not yet wired");
    2
}
