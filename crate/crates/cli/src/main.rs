mod args;
mod commands;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;

/// Usage and domain errors.
const EXIT_USAGE: u8 = 2;
/// Two independent computations disagreed.
const EXIT_CROSS_CHECK: u8 = 3;

#[derive(Debug)]
pub enum CliError {
    Lib(totient_lab::Error),
    Usage(String),
    CrossCheck(String),
    Io(io::Error),
}

impl From<totient_lab::Error> for CliError {
    fn from(e: totient_lab::Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = commands::run(&cli, &mut out).and_then(|()| out.flush().map_err(CliError::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let code = exit_code(&e);
            match e {
                CliError::Io(e) if code == 0 => drop(e),
                CliError::Lib(e) => eprintln!("error: {e}"),
                CliError::Usage(msg) => eprintln!("error: {msg}"),
                CliError::Io(e) => eprintln!("error: {e}"),
                CliError::CrossCheck(msg) => {
                    let _ = out.flush();
                    eprintln!("cross-check failed: {msg}");
                }
            }
            ExitCode::from(code)
        }
    }
}

fn exit_code(e: &CliError) -> u8 {
    match e {
        // downstream closed the pipe, e.g. `| head`
        CliError::Io(e) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        CliError::Io(_) => 1,
        CliError::Lib(_) | CliError::Usage(_) => EXIT_USAGE,
        CliError::CrossCheck(_) => EXIT_CROSS_CHECK,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let domain = CliError::Lib(totient_lab::Error::Domain("n = 0".into()));
        assert_eq!(exit_code(&domain), 2);
        assert_eq!(exit_code(&CliError::Usage("bad".into())), 2);
        assert_eq!(exit_code(&CliError::CrossCheck("mismatch".into())), 3);
        let pipe = io::Error::from(io::ErrorKind::BrokenPipe);
        assert_eq!(exit_code(&CliError::Io(pipe)), 0);
    }
}
