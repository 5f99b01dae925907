mod args;
mod params;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};

use args::Cli;

/// One machine-readable line on stderr: `error[kind]: message`.
fn fail(kind: &str, message: &str) {
    let line = message
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect::<Vec<_>>()
        .join(" ");
    eprintln!("error[{kind}]: {line}");
}

fn usage_error(e: clap::Error) -> ExitCode {
    let rendered = e.render().to_string();
    let mut lines = rendered.lines();
    let reason = match e.kind() {
        ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => "a subcommand is required".to_string(),
        _ => lines
            .next()
            .unwrap_or_default()
            .trim_start_matches("error:")
            .trim()
            .to_string(),
    };
    let usage: Vec<&str> = lines.skip_while(|l| !l.starts_with("Usage:")).collect();
    if usage.is_empty() {
        eprintln!("{}", Cli::command().render_usage());
    } else {
        eprintln!("{}", usage.join("\n").trim_end());
    }
    fail("usage", &reason);
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(std::io::stdout(), "{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return usage_error(e),
    };
    match run::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            fail(e.kind(), &e.to_string());
            ExitCode::from(if e.is_numerical() { 2 } else { 1 })
        }
    }
}
