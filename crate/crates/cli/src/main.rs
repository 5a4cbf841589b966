mod args;
mod commands;
mod config;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use deuring_core::Error;

use args::{Cli, Command};

#[derive(Debug)]
pub enum CliError {
    /// Bad input: exit 2.
    Usage(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) => match e {
                Error::WindowViolated { .. }
                | Error::DivergentTail
                | Error::Nonconvergent(_)
                | Error::NonmonotoneUnmajorized
                | Error::UnregisteredForm(_) => 1,
                _ => 2,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

fn run(cli: Cli) -> Result<commands::Outcome, CliError> {
    let cfg = config::resolve(&cli, std::env::var(config::PRECISION_ENV).ok())?;
    if let Some(n) = cfg.threads {
        if n == 0 {
            return Err(CliError::Usage("threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot set thread count: {e}")))?;
    }
    let out = match &cli.command {
        Command::Chars(a) => commands::chars(a)?,
        Command::Sieve(a) => commands::sieve(a)?,
        Command::Detect(a) => commands::detect(a)?,
        Command::Verify(a) => commands::verify(a, &cfg)?,
        Command::Bound(a) => commands::bound(a, &cfg)?,
        Command::CertsList => commands::certs_list(),
    };
    let text = output::emit(&out.report, cfg.format);
    let mut stdout = std::io::stdout().lock();
    // A closed pipe is not an error worth reporting.
    let _ = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush());
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) if out.ok => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
