// `!(x > y)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::Cli;
use output::{Envelope, Format};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if cli.format == Format::Csv && !cli.command.is_tabular() {
        eprintln!("error: --format csv is only available for tabular commands");
        return ExitCode::from(2);
    }
    if let Err(msg) = cli.command.validate() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }

    let start = Instant::now();
    let outcome = commands::run(&cli.command);
    let runtime_ms = start.elapsed().as_millis() as u64;
    let envelope = Envelope::new(&cli.command, outcome, runtime_ms);
    let failed = envelope.error.is_some();

    let text = match output::render(&envelope, cli.format) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            }
        }
    }
    if failed {
        if let Some(err) = &envelope.error {
            eprintln!("error ({}): {}", err.kind, err.message);
        }
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
