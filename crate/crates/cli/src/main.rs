mod args;
mod cmd;
mod config;
mod error;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;
use crate::error::CliError;

fn run() -> Result<(), CliError> {
    let argv = config::merge(std::env::args_os().collect())?;
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return Err(CliError::Validation("invalid arguments".into()));
        }
        Err(e) => {
            // --help / --version
            let _ = e.print();
            return Ok(());
        }
    };
    let format = cli.format;
    let report = edslab::par::with_jobs(cli.jobs, move || cmd::dispatch(cli.command))?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    report.report.emit(format, &mut out)?;
    out.flush()?;
    match report.failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("edslab: {e}");
            e.exit_code()
        }
    }
}
