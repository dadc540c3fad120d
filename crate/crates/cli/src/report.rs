//! The report every command produces, and its two renderings.

use std::io::Write;
use std::process::ExitCode;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use gkz::Error;

use crate::GlobalArgs;

pub const EXIT_REFUTED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_DEGENERATE: u8 = 4;
pub const EXIT_INTERNAL: u8 = 5;

/// A finished command.
pub struct Outcome {
    pub command: &'static str,
    pub input: Input,
    pub result: Value,
    pub citations: Vec<String>,
    pub human: String,
    pub exit: u8,
}

/// A command that could not produce a result.
pub struct Failure {
    pub command: &'static str,
    pub message: String,
    pub exit: u8,
}

impl Failure {
    pub fn new(command: &'static str, message: impl Into<String>, exit: u8) -> Self {
        Self { command, message: message.into(), exit }
    }

    pub fn from_error(command: &'static str, e: &Error) -> Self {
        Self::new(command, e.to_string(), exit_code(e))
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SearchSpaceExceeded { .. } | Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Degenerate(_) => EXIT_DEGENERATE,
        Error::Interpolation(_) | Error::CertificationFailed(_) | Error::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    }
}

/// What the command read, and its digest.
pub struct Input {
    pub source: String,
    pub sha256: String,
}

impl Input {
    pub fn new(source: impl Into<String>, bytes: &[u8]) -> Self {
        Self { source: source.into(), sha256: format!("{:x}", Sha256::digest(bytes)) }
    }
}

#[derive(Serialize)]
struct Report<'a> {
    command: &'a str,
    input: &'a str,
    input_sha256: &'a str,
    result: &'a Value,
    citations: &'a [String],
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<f64>,
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    command: &'a str,
    error: &'a str,
    exit_code: u8,
}

pub fn emit(g: &GlobalArgs, outcome: Result<Outcome, Failure>, elapsed: Duration) -> ExitCode {
    let timing_ms = g.timing.then_some(elapsed.as_secs_f64() * 1000.0);
    let mut text = String::new();
    let code = match outcome {
        Ok(o) => {
            if g.json {
                let report = Report {
                    command: o.command,
                    input: &o.input.source,
                    input_sha256: &o.input.sha256,
                    result: &o.result,
                    citations: &o.citations,
                    timing_ms,
                };
                text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
            } else {
                text.push_str(&o.human);
                for c in &o.citations {
                    text.push_str(&format!("rule: {c}\n"));
                }
                text.push_str(&format!("input: {} (sha256 {})\n", o.input.source, o.input.sha256));
                if let Some(ms) = timing_ms {
                    text.push_str(&format!("time: {ms:.1} ms\n"));
                }
            }
            o.exit
        }
        Err(f) => {
            if g.json {
                let report = ErrorReport { command: f.command, error: &f.message, exit_code: f.exit };
                text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
            }
            eprintln!("gkz {}: {}", f.command, f.message);
            f.exit
        }
    };
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    ExitCode::from(code)
}
