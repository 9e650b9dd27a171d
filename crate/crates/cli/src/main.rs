use std::process::ExitCode;

use clap::Parser;

mod args;
mod commands;
mod output;

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(commands::exit_status(&err))
        }
    }
}
