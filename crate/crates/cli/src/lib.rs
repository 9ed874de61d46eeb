//! Library side of the `confocal` binary, so commands can be driven from
//! tests without spawning processes.

pub mod args;
pub mod commands;
pub mod output;
pub mod sampling;
pub mod suites;

use args::{Cli, Command, CommandKind, JobSpec};
use clap::Parser;
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

/// Why a command stopped.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags or an unsupported combination.
    Usage(String),
    /// Rejected by the geometry routines.
    Numeric(confocal_core::Error),
}

impl From<confocal_core::Error> for Failure {
    fn from(e: confocal_core::Error) -> Self {
        Failure::Numeric(e)
    }
}

/// A finished command: the rendered body and its exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub body: String,
    pub code: i32,
}

/// What the process prints and returns.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `argv` and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() { (String::new(), text) } else { (text, String::new()) };
            return Outcome { stdout, stderr, code };
        }
    };
    let job = match cli.command {
        Command::Elliptic(c) => JobSpec::from_flags(CommandKind::Elliptic, c),
        Command::Mesh(c) => JobSpec::from_flags(CommandKind::Mesh, c),
        Command::Staude(c) => JobSpec::from_flags(CommandKind::Staude, c),
        Command::Verify(c) => JobSpec::from_flags(CommandKind::Verify, c),
        Command::Job { path } => match std::fs::read_to_string(&path)
            .map_err(|e| e.to_string())
            .and_then(|s| serde_json::from_str::<JobSpec>(&s).map_err(|e| e.to_string()))
        {
            Ok(job) => job,
            Err(e) => return usage(format!("cannot read job {}: {e}", path.display())),
        },
    };
    run_job(&job)
}

/// Runs a parsed job and writes `--output` if requested.
pub fn run_job(job: &JobSpec) -> Outcome {
    match commands::dispatch(job) {
        Ok(r) => match &job.output {
            Some(path) => match std::fs::write(path, &r.body) {
                Ok(()) => Outcome {
                    stdout: String::new(),
                    stderr: String::new(),
                    code: r.code,
                },
                Err(e) => usage(format!("cannot write {}: {e}", path.display())),
            },
            None => Outcome {
                stdout: r.body,
                stderr: String::new(),
                code: r.code,
            },
        },
        Err(Failure::Usage(m)) => usage(m),
        Err(Failure::Numeric(e)) => Outcome {
            stdout: error_object(e.code(), &e.to_string()),
            stderr: String::new(),
            code: if e.is_numeric() { EXIT_NUMERIC } else { EXIT_USAGE },
        },
    }
}

fn usage(message: String) -> Outcome {
    Outcome {
        stdout: String::new(),
        stderr: format!("error: {message}\n"),
        code: EXIT_USAGE,
    }
}

/// The machine-readable error report.
pub fn error_object(code: &str, message: &str) -> String {
    output::to_json(&json!({ "error": { "code": code, "message": message } }))
}
