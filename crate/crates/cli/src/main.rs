mod args;
mod commands;
mod failure;
mod report;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use failure::{Failure, EXIT_USAGE};

/// `CYCLEWEAVE_THREADS` caps the worker pool.
fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("CYCLEWEAVE_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n >= 1).ok_or_else(|| {
        Failure::usage(format!(
            "CYCLEWEAVE_THREADS must be a positive integer, got {raw:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::usage(format!("cannot configure {n} threads: {e}")))
}

fn run(cli: Cli) -> Result<i32, Failure> {
    configure_threads()?;
    match cli.command {
        Command::Generate(a) => commands::generate(a),
        Command::Extract(a) => commands::extract_cmd(*a),
        Command::Verify(a) => commands::verify_cmd(a),
        Command::Audit(a) => commands::audit_cmd(a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("cycleweave: {f}");
            f.code
        }
    };
    ExitCode::from(code as u8)
}
