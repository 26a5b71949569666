//! `rescomp`: command-line front end.
//!
//! Exit codes: 0 success, 1 usage or invalid input, 2 hypothesis violation,
//! 3 disagreement with brute force or a failed law.

mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use rescomp::Error;

use args::Cli;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::HypothesisViolation(_)
        | Error::DegenerateDiscriminant { .. }
        | Error::OutOfScope { .. }
        | Error::FactorizationLimit { .. } => 2,
        Error::Disagreement { .. } | Error::LawViolation(_) => 3,
        Error::TrivialSeed { .. }
        | Error::ZeroCoefficient
        | Error::InvalidModulus { .. }
        | Error::ModulusTooLarge { .. }
        | Error::Serialization(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: cannot configure {jobs} worker threads: {e}");
            return ExitCode::from(1);
        }
    }
    match commands::run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.stdout.as_bytes());
            if out.code != 0 {
                eprintln!("error: a checked law did not hold");
            }
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
