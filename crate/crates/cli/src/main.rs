//! `hnr`: batch front end for ranking, calibration and evaluation runs.

mod args;
mod calibrate;
mod error;
mod evaluate;
mod rank;
mod run;
mod synth;

use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::error::CliError;
use crate::run::Run;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot configure thread pool: {e}")))?;
    }
    std::fs::create_dir_all(&cli.out_dir).map_err(|source| CliError::Output {
        path: cli.out_dir.display().to_string(),
        source,
    })?;
    let run = |name| Run::new(name, &cli);
    match &cli.command {
        Command::Rank(a) => rank::run(run("rank"), a),
        Command::Calibrate(a) => calibrate::run(run("calibrate"), a),
        Command::Evaluate(a) => evaluate::evaluate(run("evaluate"), a),
        Command::Cv(a) => evaluate::cv(run("cv"), a),
        Command::Sweep(a) => evaluate::sweep(run("sweep"), a),
        Command::Htbreaks(a) => evaluate::htbreaks(run("htbreaks"), a),
        Command::Synth(a) => synth::run(run("synth"), a),
    }
}
