//! CLI entry point. `run` parses the arguments, dispatches, prints a JSON
//! summary on stdout, and maps failures to exit codes: 2 for validation
//! problems, 64 for an unknown verb, 65 for malformed input files.

pub mod args;
pub mod commands;
pub mod io;

use clap::error::ErrorKind;
use clap::Parser;

#[derive(Debug)]
pub enum CliError {
    /// Bad parameters or inconsistent inputs (exit 2).
    Validation(String),
    /// A file that exists but cannot be parsed (exit 65).
    Malformed(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(msg) => write!(f, "{msg}"),
            CliError::Malformed(msg) => write!(f, "malformed file: {msg}"),
        }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_UNKNOWN_VERB: i32 = 64;
pub const EXIT_MALFORMED: i32 = 65;

/// Run the CLI on explicit arguments (element 0 is the program name) and
/// return the process exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::InvalidSubcommand => EXIT_UNKNOWN_VERB,
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = err.print();
                    return EXIT_OK;
                }
                _ => EXIT_VALIDATION,
            };
            eprintln!("{err}");
            return code;
        }
    };
    match commands::dispatch(&cli) {
        Ok(metrics) => {
            let summary = serde_json::json!({"ok": true, "metrics": metrics});
            println!("{summary}");
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CliError::Validation(_) => EXIT_VALIDATION,
                CliError::Malformed(_) => EXIT_MALFORMED,
            }
        }
    }
}
