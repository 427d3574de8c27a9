//! `tf2m`: solve, check and benchmark weighted triangle-free 2-matching.

mod args;
mod commands;
mod failure;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("tf2m: {failure}");
            ExitCode::from(failure.code())
        }
    }
}
