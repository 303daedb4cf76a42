//! Command outcomes, exit codes and the JSON report shape.

use std::path::PathBuf;
use std::time::Duration;

use flattice::io::IoError;
use flattice::Error;
use serde_json::{json, Value};

/// A completed command. `passed` is false when a checked property fails.
pub struct Success {
    pub result: Value,
    pub witness: Option<Value>,
    pub passed: bool,
    pub lines: Vec<String>,
}

impl Success {
    pub fn pass(result: Value, lines: Vec<String>) -> Self {
        Success {
            result,
            witness: None,
            passed: true,
            lines,
        }
    }

    pub fn fail(result: Value, witness: Value, lines: Vec<String>) -> Self {
        Success {
            result,
            witness: Some(witness),
            passed: false,
            lines,
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    /// Unreadable, malformed or inconsistent input: exit code 2.
    Input(String),
    /// A mathematical property failed inside the library: exit code 1.
    Math {
        kind: &'static str,
        message: String,
        witness: Option<Value>,
    },
}

fn error_witness(e: &Error) -> Option<Value> {
    Some(match e {
        Error::NotSublattice { witness }
        | Error::NotPositive { witness }
        | Error::NotSemiPrime { witness } => json!(witness),
        Error::NotClosed { i, j } => json!({ "basis_pair": [i, j] }),
        Error::NotFAlgebra { i, j, point } => json!({ "basis_pair": [i, j], "point": point }),
        Error::Inconsistent { basis, point } => json!({ "basis": basis, "point": point }),
        Error::NegativeWeight { point } => json!({ "point": point }),
        Error::NotIntoCodomain { basis } => json!({ "basis": basis }),
        _ => return None,
    })
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Math {
                kind: e.kind(),
                message: e.to_string(),
                witness: error_witness(&e),
            }
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Math(e) => e.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

pub struct Report {
    command: &'static str,
    inputs: Vec<String>,
    outcome: Result<Success, Failure>,
    elapsed: Duration,
}

impl Report {
    pub fn new(command: &'static str, inputs: &[PathBuf], outcome: Result<Success, Failure>, elapsed: Duration) -> Self {
        Report {
            command,
            inputs: inputs.iter().map(|p| p.display().to_string()).collect(),
            outcome,
            elapsed,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match &self.outcome {
            Ok(s) if s.passed => 0,
            Ok(_) => 1,
            Err(Failure::Math { .. }) => 1,
            Err(Failure::Input(_)) => 2,
        }
    }

    pub fn to_json(&self) -> String {
        let mut doc = json!({
            "command": self.command,
            "inputs": self.inputs,
            "timings": { "total_ms": self.elapsed.as_secs_f64() * 1000.0 },
        });
        let obj = doc.as_object_mut().expect("object");
        match &self.outcome {
            Ok(s) => {
                obj.insert("result".into(), s.result.clone());
                if let Some(w) = &s.witness {
                    obj.insert("witness".into(), w.clone());
                }
            }
            Err(Failure::Input(message)) => {
                obj.insert("result".into(), Value::Null);
                obj.insert("error".into(), json!({ "kind": "InvalidInput", "message": message }));
            }
            Err(Failure::Math { kind, message, witness }) => {
                obj.insert("result".into(), Value::Null);
                obj.insert("error".into(), json!({ "kind": kind, "message": message }));
                if let Some(w) = witness {
                    obj.insert("witness".into(), w.clone());
                }
            }
        }
        serde_json::to_string_pretty(&doc).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.outcome {
            Ok(s) => {
                for l in &s.lines {
                    out.push_str(l);
                    out.push('\n');
                }
                if let Some(w) = &s.witness {
                    out.push_str(&format!("witness: {}\n", plain(w)));
                }
                out.push_str(if s.passed { "ok\n" } else { "FAILED\n" });
            }
            Err(Failure::Input(m)) => out.push_str(&format!("invalid input: {m}\n")),
            Err(Failure::Math { message, witness, .. }) => {
                out.push_str(&format!("FAILED: {message}\n"));
                if let Some(w) = witness {
                    out.push_str(&format!("witness: {}\n", plain(w)));
                }
            }
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
