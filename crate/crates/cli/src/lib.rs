//! Command-line front end for the `akr-core` operators.
//!
//! [`run_cli`] is the whole program minus process exit, so tests drive it
//! in-process.

pub mod commands;
pub mod config;
pub mod error;
#[doc(hidden)]
pub mod fuzz_harness;
pub mod report;

use std::io::Write;

use akr_core::parallel::workers_from_env;
use clap::error::ErrorKind;

pub use commands::{run, Outcome, Verdict};
pub use config::{Cli, Command, Format, RunConfig};
pub use error::CliError;
pub use report::{parse_csv, parse_json, Cell, Payload, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// Looks for `--format json` in raw args so that parse errors can still be
/// reported as JSON.
fn wants_json(args: &[String]) -> bool {
    args.windows(2).any(|w| w[0] == "--format" && w[1] == "json")
        || args.iter().any(|a| a == "--format=json")
}

fn report_error(err: &CliError, json: bool, stderr: &mut dyn Write) {
    let msg = match err {
        CliError::Usage(e) => e.render().to_string(),
        e => e.to_string(),
    };
    if json {
        let obj = serde_json::json!({
            "error": { "kind": err.kind(), "message": msg.trim_end() }
        });
        let _ = writeln!(stderr, "{obj}");
    } else {
        let _ = writeln!(stderr, "error: {}", msg.trim_end().trim_start_matches("error: "));
    }
}

fn emit(config: &RunConfig, report: &Report, stdout: &mut dyn Write) -> Result<(), CliError> {
    let text = match config.format {
        Format::Csv => report.render_csv()?,
        Format::Json => report.render_json()?,
    };
    match &config.output_path {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run_cli<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let json = wants_json(&args);
    let (config, dry_run) = match RunConfig::try_parse_from(&args) {
        Ok(v) => v,
        Err(CliError::Usage(e))
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) =>
        {
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
        Err(e) => {
            report_error(&e, json, stderr);
            return EXIT_INVALID;
        }
    };
    if dry_run {
        let text = serde_json::to_string_pretty(&config).expect("config serializes");
        let _ = writeln!(stdout, "{text}");
        return EXIT_OK;
    }
    let result = run(&config, workers_from_env())
        .and_then(|outcome| emit(&config, &outcome.report, stdout).map(|_| outcome.verdict));
    match result {
        Ok(Verdict::Fail) => EXIT_FAILED,
        Ok(_) => EXIT_OK,
        Err(e) => {
            report_error(&e, json, stderr);
            EXIT_INVALID
        }
    }
}
