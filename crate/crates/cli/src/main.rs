mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use lincode::Error;

use args::{Cli, Command};
use commands::Outcome;

const EXIT_PARAM: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_DISAGREE: u8 = 4;

fn run(cli: &Cli) -> lincode::Result<Outcome> {
    let c = &cli.common;
    let workers = c.workers as usize;
    match &cli.command {
        Command::FieldInfo(f) => commands::field_info(f, c.format),
        Command::WeightDist { field, method } => {
            commands::weight_dist(field, *method, c.budget, workers, c.format)
        }
        Command::WengerSpectrum { field, method, tol } => {
            commands::wenger_spectrum(field, *method, *tol, c.budget, workers, c.format)
        }
        Command::VerifyConjecture { q, u_max } => {
            commands::verify_conjecture(q, *u_max, workers, c.format)
        }
        Command::LatticeChecks { q, n, seed } => commands::lattice_checks(*q, *n, *seed, c.format),
        Command::MooreRankTest { field, trials, seed } => {
            commands::moore_rank_test(field, *trials, *seed, c.format)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Param(_) | Error::Domain(_) => EXIT_PARAM,
        Error::Budget { .. } => EXIT_BUDGET,
        Error::Numerical(_) | Error::Internal(_) => EXIT_DISAGREE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let written = match &cli.common.out {
        Some(path) => std::fs::write(path, &outcome.text),
        None => std::io::stdout().write_all(outcome.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::FAILURE;
    }
    if outcome.disagreement {
        eprintln!("error: methods disagree or a check failed");
        return ExitCode::from(EXIT_DISAGREE);
    }
    ExitCode::SUCCESS
}
