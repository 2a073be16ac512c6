//! Run reports and process exit codes.

use std::process::ExitCode;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

/// All checks passed.
pub const EXIT_OK: u8 = 0;
/// A counterexample or failed identity was found.
pub const EXIT_FAILURE: u8 = 1;
/// Bad arguments or input that violates a precondition.
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Default, Serialize)]
pub struct Summary {
    pub checked: usize,
    pub passed: usize,
    pub failed: usize,
}

/// Everything but `wall_time_s` is a deterministic function of the command.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub version: &'static str,
    pub wall_time_s: f64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub records: Vec<Value>,
    pub summary: Summary,
    pub counterexamples: Vec<Value>,
}

impl RunReport {
    pub fn new(command: &[String], started: Instant, summary: Summary) -> Self {
        RunReport {
            command: command.to_vec(),
            version: env!("CARGO_PKG_VERSION"),
            wall_time_s: started.elapsed().as_secs_f64(),
            records: Vec::new(),
            summary,
            counterexamples: Vec::new(),
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(if self.summary.failed == 0 { EXIT_OK } else { EXIT_FAILURE })
    }
}

pub fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("reports serialize"));
}
