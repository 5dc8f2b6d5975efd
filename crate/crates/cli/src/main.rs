use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

mod args;
mod commands;

fn main() -> ExitCode {
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's own usage status is 2, which is reserved for incomplete results
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match commands::run(&cli.command) {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            if let Err(e) = out
                .write_all(outcome.stdout.as_bytes())
                .and_then(|()| out.flush())
            {
                eprintln!("error: writing output: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(outcome.status)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
