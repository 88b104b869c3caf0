use std::io::Write;
use std::process::ExitCode;

use bps_cli::commands::{execute, Cli};
use bps_cli::CliError;
use clap::Parser;

fn run(cli: &Cli) -> Result<(), CliError> {
    let text = execute(&cli.command, cli.output.format)?;
    match &cli.output.output {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: path.clone(), source }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors count as input errors; 2 is reserved for consistency failures
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
