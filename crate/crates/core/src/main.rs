use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use sklyanin::cli::{init_threads, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let out = match run(&cli.command, &cli.config) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    let written = match &cli.config.out {
        Some(path) => std::fs::write(path, &out.body),
        None => std::io::stdout().write_all(out.body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::FAILURE;
    }
    if out.ok {
        ExitCode::SUCCESS
    } else {
        eprintln!("error: verification failed");
        ExitCode::FAILURE
    }
}
