mod args;
mod commands;
mod files;
mod manifest;
mod plot;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Input the user can fix: bad flags, missing inputs, conflicting options.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage<T>(message: impl Into<String>) -> anyhow::Result<T> {
    Err(UsageError(message.into()).into())
}

const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<UsageError>() {
            return EXIT_USAGE;
        }
        if let Some(e) = cause.downcast_ref::<cogsent_core::Error>() {
            return match e {
                cogsent_core::Error::Config(_) => EXIT_USAGE,
                _ => EXIT_DATA,
            };
        }
        if cause.is::<std::io::Error>() || cause.is::<csv::Error>() || cause.is::<serde_json::Error>() {
            return EXIT_DATA;
        }
    }
    EXIT_INTERNAL
}

fn dispatch(cli: Cli) -> anyhow::Result<()> {
    let jobs = cli.jobs;
    match cli.command {
        Command::Extract(a) => commands::extract(a, jobs),
        Command::Train(a) => commands::train(a),
        Command::Predict(a) => commands::predict(a),
        Command::Cv(a) => commands::cv(a, jobs),
        Command::Rank(a) => commands::rank(a),
        Command::Mcnemar(a) => commands::mcnemar(a),
        Command::Heldout(a) => commands::heldout(a, jobs),
        Command::Synth(a) => commands::synth(a),
        Command::BaselineRb(a) => commands::baseline_rb(a),
        Command::Plot(a) => plot::run(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    env_logger::Builder::new()
        .filter_level(if cli.verbose { log::LevelFilter::Info } else { log::LevelFilter::Warn })
        .parse_default_env()
        .init();
    match std::panic::catch_unwind(|| dispatch(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {}", format!("{e:#}").replace('\n', " "));
            ExitCode::from(exit_code(&e))
        }
        Err(_) => ExitCode::from(EXIT_INTERNAL),
    }
}
