//! `gammaspec`: batch front end over JSON semiring descriptions.
//!
//! Exit codes: 0 success, 1 a check reported violations, 2 usage error,
//! 3 malformed input, 4 a cap was exceeded, 5 any other failure.

mod args;
mod commands;
mod text;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use gammaspec_core::Error;

use args::Cli;

pub const EXIT_VIOLATIONS: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_MALFORMED: u8 = 3;
pub const EXIT_CAP: u8 = 4;
pub const EXIT_OTHER: u8 = 5;

/// What went wrong, already mapped to an exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn malformed(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_MALFORMED,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::InvalidInput(_)
            | Error::DimensionMismatch { .. }
            | Error::OutOfRange { .. }
            | Error::EmptyCarrier
            | Error::EmptyGamma
            | Error::DuplicateGamma(_) => EXIT_MALFORMED,
            Error::CapExceeded { .. } => EXIT_CAP,
            Error::RepresentativeDependent { .. } => EXIT_VIOLATIONS,
            _ => EXIT_OTHER,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Rendered output plus whether the command found violations.
pub struct Outcome {
    pub body: String,
    pub violations: bool,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(EXIT_USAGE);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: cannot configure threads: {e}");
            return ExitCode::from(EXIT_OTHER);
        }
    }
    log::info!("seed {}", cli.seed);
    match commands::run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.body.as_bytes()).is_err() {
                return ExitCode::from(EXIT_OTHER);
            }
            ExitCode::from(if out.violations { EXIT_VIOLATIONS } else { 0 })
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
