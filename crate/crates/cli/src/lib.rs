//! Command-line front end for `qube_core`.
//!
//! Exit codes: 0 when the command succeeds and every checked property holds,
//! 1 when a property fails (the counterexample is printed as JSON), 2 on usage
//! or I/O errors.

pub mod args;
mod commands;
pub mod corpus;
pub mod table;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use args::{Cli, Command};
pub use table::{pigeonhole_report, PigeonholeReport};
pub use verify::{CorpusKind, VerifyReport};

/// Environment variable capping the worker count.
pub const THREADS_VAR: &str = "QUBE_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] qube_core::Error),
    #[error("output: {0}")]
    Output(#[from] std::io::Error),
}

/// Whether the command found a violation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Violated,
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let result = Workers::from_env().and_then(|workers| commands::run(cli.command, &workers, out, err));
    match result {
        Ok(Outcome::Holds) => 0,
        Ok(Outcome::Violated) => 1,
        Err(CliError::Output(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Rayon pool for the parallel parts of a command, capped by [`THREADS_VAR`].
#[derive(Default)]
pub struct Workers {
    pool: Option<rayon::ThreadPool>,
}

impl Workers {
    pub fn from_env() -> Result<Self, CliError> {
        let Ok(raw) = std::env::var(THREADS_VAR) else {
            return Ok(Self { pool: None });
        };
        let threads: usize = raw
            .trim()
            .parse()
            .ok()
            .filter(|&t| t > 0)
            .ok_or_else(|| CliError::Usage(format!("{THREADS_VAR} must be a positive integer, got `{raw}`")))?;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
        Ok(Self { pool: Some(pool) })
    }

    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match &self.pool {
            Some(pool) => pool.install(f),
            None => f(),
        }
    }
}
