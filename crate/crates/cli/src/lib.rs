//! Command-line driver for `casimir-core`: parameter sweeps written as CSV,
//! stability reports and the acceptance self-test.
//!
//! Exit status: 0 on success, 1 when the self-test has failing criteria or
//! output cannot be written, 2 on argument errors, 3 when a solver does not
//! converge (the rows computed so far are kept and followed by an
//! `# INCOMPLETE` line).

pub mod args;
mod commands;
pub mod config;
pub mod output;
pub mod selftest;

use std::ffi::OsString;
use std::io::Write;

use clap::{CommandFactory, FromArgMatches};

pub use args::RunConfig;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Clap(#[from] clap::Error),
    #[error("{0}")]
    Solver(casimir_core::CasimirError),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0} acceptance criteria failed")]
    Failed(usize),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Usage(_) => EXIT_USAGE,
            RunError::Clap(e) if !e.use_stderr() => EXIT_OK,
            RunError::Clap(_) => EXIT_USAGE,
            RunError::Solver(_) => EXIT_NOT_CONVERGED,
            RunError::Io(_) | RunError::Failed(_) => EXIT_FAILED,
        }
    }
}

/// A parsed command line with the resolved parameter list for the CSV
/// header (definition order, config file and defaults applied).
pub struct Parsed {
    pub config: RunConfig,
    pub params: Vec<(String, String)>,
}

/// Parse without reading any `--config` file.
pub fn parse_command_line(argv: &[OsString]) -> Result<Parsed, clap::Error> {
    let mut cmd = RunConfig::command();
    let matches = cmd.try_get_matches_from_mut(argv)?;
    let config = RunConfig::from_arg_matches(&matches)?;
    let mut params = Vec::new();
    if let Some((name, sub)) = matches.subcommand() {
        let def = cmd
            .find_subcommand(name)
            .expect("matched subcommand is defined");
        for arg in def.get_arguments() {
            let id = arg.get_id().as_str();
            if matches!(id, "config" | "output" | "help" | "version") {
                continue;
            }
            if let Ok(Some(raw)) = sub.try_get_raw(id) {
                let values: Vec<String> =
                    raw.map(|v| v.to_string_lossy().into_owned()).collect();
                if !values.is_empty() {
                    let key = arg.get_long().unwrap_or(id).to_string();
                    params.push((key, values.join(",")));
                }
            }
        }
    }
    Ok(Parsed { config, params })
}

/// Parse, then merge settings from `--config` underneath the flags.
pub fn parse_args(argv: &[OsString]) -> Result<Parsed, RunError> {
    let first = parse_command_line(argv)?;
    let Some(path) = commands::io_args(&first.config.command).config.clone() else {
        return Ok(first);
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| RunError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    let settings = config::parse_config(&text)
        .map_err(|e| RunError::Usage(format!("config {}: {e}", path.display())))?;
    let name = first.config.command.name();
    let pos = argv
        .iter()
        .skip(1)
        .position(|a| a == name)
        .map(|p| p + 1)
        .ok_or_else(|| RunError::Usage(format!("subcommand `{name}` not found")))?;
    let mut merged = argv[..=pos].to_vec();
    merged.extend(config::to_flags(&settings));
    merged.extend_from_slice(&argv[pos + 1..]);
    Ok(parse_command_line(&merged)?)
}

/// Run a full command line. CSV goes to `out` unless `--output` is given;
/// diagnostics go to `err`.
pub fn run(argv: &[OsString], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = parse_args(argv).and_then(|parsed| commands::execute(&parsed, out));
    match result {
        Ok(()) => EXIT_OK,
        Err(RunError::Clap(e)) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(err, "casimir-scatter: {e}");
            if let RunError::Usage(_) = e {
                let _ = writeln!(err, "{}", RunConfig::command().render_usage());
            }
            e.exit_code()
        }
    }
}
