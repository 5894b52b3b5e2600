//! `holsym`: command-line front end.
//!
//! Exit codes: 0 success, 1 usage, 2 validation, 3 computation
//! inconsistency. Errors go to stderr as `{"code","message","location"}`.

mod args;
mod commands;
mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind as ClapKind;
use clap::Parser;

use args::{Cli, Command, Format};
use input::CliError;

fn format_of(command: &Command) -> Format {
    match command {
        Command::Validate(c) | Command::Ddbar(c) => c.format,
        Command::Cohomology { common, .. }
        | Command::SymplecticScan { common, .. }
        | Command::Bbf { common, .. }
        | Command::Lefschetz { common, .. }
        | Command::Report { common, .. } => common.format,
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("{}", e.to_json());
    ExitCode::from(e.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ClapKind::DisplayHelp | ClapKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.render().to_string();
            let message = message.trim().trim_start_matches("error: ");
            return fail(&CliError::Usage(message.to_string()));
        }
    };
    match commands::run(&cli.command) {
        Ok(out) => {
            let body = match format_of(&cli.command) {
                Format::Text => out.text,
                Format::Json => serde_json::to_string_pretty(&out.json).expect("JSON values serialize") + "\n",
            };
            // A closed pipe downstream is not an error of the computation.
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}
