use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use poise::cli::{dispatch, RunConfig};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("POISE_LOG", "warn")).init();
    let cfg = RunConfig::parse();
    let outcome = dispatch(&cfg);
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(outcome.report.as_bytes()).is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.exit_code as u8)
}
