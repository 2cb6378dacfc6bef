//! Command-line front end: argument parsing, JSON input formats, and the
//! report document every subcommand prints.

pub mod algebra_file;
pub mod args;
pub mod commands;
pub mod encode;
pub mod error;
pub mod fixtures;
pub mod report;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;
use z2cross::{Config, TolerancePolicy};

use crate::args::Cli;
use crate::error::{CliError, EXIT_INVALID_INPUT, EXIT_OK, EXIT_VIOLATION};
use crate::report::{Report, Tolerance};

pub const ENV_ABS_TOL: &str = "Z2CROSS_ABS_TOL";
pub const ENV_REL_TOL: &str = "Z2CROSS_REL_TOL";

/// Everything a run writes, kept apart from the process so tests can inspect it.
#[derive(Clone, Debug)]
pub struct Execution {
    pub stdout: Option<String>,
    pub stderr: String,
    pub exit_code: i32,
}

impl Execution {
    pub fn report(&self) -> Option<Report> {
        self.stdout
            .as_deref()
            .and_then(|s| Report::from_json(s).ok())
    }
}

/// Runs with tolerances taken from the process environment.
pub fn run<I, T>(argv: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_env(argv, |k| std::env::var(k).ok())
}

pub fn run_with_env<I, T>(argv: I, env: impl Fn(&str) -> Option<String>) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Execution {
                    stdout: Some(text),
                    stderr: String::new(),
                    exit_code: EXIT_OK,
                },
                _ => Execution {
                    stdout: None,
                    stderr: text,
                    exit_code: EXIT_INVALID_INPUT,
                },
            };
        }
    };
    let command: Vec<String> = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let seed = cli.seed.unwrap_or(Config::DEFAULT_SEED);

    let cfg = match tolerance(&cli, &env) {
        Ok(tol) => Config::new(tol, seed),
        Err(e) => {
            let tol = Tolerance {
                abs_tol: cli.abs_tol.unwrap_or(TolerancePolicy::DEFAULT_ABS),
                rel_tol: cli.rel_tol.unwrap_or(TolerancePolicy::DEFAULT_REL),
            };
            return failure(command, seed, tol, e);
        }
    };
    let tol = Tolerance {
        abs_tol: cfg.tol.abs_tol(),
        rel_tol: cfg.tol.rel_tol(),
    };

    match commands::execute(&cli.command, &cfg) {
        Ok(out) => {
            let exit_code = if out.violations.is_empty() {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            };
            let mut stderr = out.summary;
            for v in &out.violations {
                stderr.push_str("\nviolation: ");
                stderr.push_str(v);
            }
            let report = Report {
                command,
                seed,
                tolerance: tol,
                results: out.results,
                anchor: out.anchor,
                violations: out.violations,
                exit_code,
            };
            Execution {
                stdout: Some(report.to_json()),
                stderr,
                exit_code,
            }
        }
        Err(e) => failure(command, seed, tol, e),
    }
}

fn failure(command: Vec<String>, seed: u64, tolerance: Tolerance, e: CliError) -> Execution {
    let exit_code = e.exit_code();
    let msg = e.to_string();
    let report = Report {
        command,
        seed,
        tolerance,
        results: json!({ "error": msg }),
        anchor: String::new(),
        violations: Vec::new(),
        exit_code,
    };
    Execution {
        stdout: Some(report.to_json()),
        stderr: format!("error: {msg}"),
        exit_code,
    }
}

/// Flags override the environment, which overrides the defaults.
fn tolerance(
    cli: &Cli,
    env: &impl Fn(&str) -> Option<String>,
) -> Result<TolerancePolicy, CliError> {
    let pick = |flag: Option<f64>, var: &str, default: f64| -> Result<f64, CliError> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match env(var) {
            Some(s) => s
                .trim()
                .parse::<f64>()
                .map_err(|_| CliError::input(format!("{var}={s:?} is not a number"))),
            None => Ok(default),
        }
    };
    let abs = pick(cli.abs_tol, ENV_ABS_TOL, TolerancePolicy::DEFAULT_ABS)?;
    let rel = pick(cli.rel_tol, ENV_REL_TOL, TolerancePolicy::DEFAULT_REL)?;
    Ok(TolerancePolicy::new(abs, rel)?)
}
