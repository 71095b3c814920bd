//! Command-line front end for `symtrack`: an expression language over
//! C₊(n) and subcommands that print or serialize [`symtrack::Report`]s.

pub mod commands;
pub mod lang;

use clap::Parser;

pub use commands::{execute, exit_code, render_text, Cli, CliError};

/// Parses `args`, runs the command and returns `(exit code, stdout, stderr)`.
///
/// Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage
/// and input errors.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 { (0, text, String::new()) } else { (2, String::new(), text) };
        }
    };
    match execute(&cli.command) {
        Ok(report) => {
            let out = if cli.json {
                serde_json::to_string_pretty(&report).expect("reports serialize") + "\n"
            } else {
                render_text(&report)
            };
            (exit_code(&report), out, String::new())
        }
        Err(e) => (2, String::new(), format!("error: {e}\n")),
    }
}
