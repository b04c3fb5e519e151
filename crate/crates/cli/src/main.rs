//! `fusion`: fusion tables, verification suites and small utilities.
//!
//! Exit codes: 0 success, 1 identity violation, 2 usage, 3 rounding residual
//! too large, 4 degenerate configuration. Log level comes from `FUSION_LOG`.

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;
use log::{debug, error};

use crate::args::{Cli, Command, Common};
use crate::commands::{CliError, Outcome};

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::FusionTable(a) => &a.common,
        Command::Verify(a) => &a.common,
        Command::Character(a) => &a.common,
        Command::Alcove(a) => &a.common,
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::FusionTable(a) => commands::table::run(a),
        Command::Verify(a) => commands::verify::run(a),
        Command::Character(a) => commands::inspect::character(a),
        Command::Alcove(a) => commands::inspect::alcove(a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("FUSION_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let opts = common(&cli.command);
    if opts.threads == 0 {
        eprintln!("error: --threads must be at least 1");
        return ExitCode::from(2);
    }
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(opts.threads).build_global() {
        debug!("thread pool already configured: {e}");
    }
    match run(&cli) {
        Ok(outcome) => {
            if let Err(e) = outcome.output.emit(opts.format, opts.out.as_deref()) {
                error!("writing output: {e}");
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
