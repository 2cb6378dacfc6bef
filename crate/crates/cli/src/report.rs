use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
}

/// The single JSON document a command writes to standard output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    /// Arguments after the program name.
    pub command: Vec<String>,
    pub seed: u64,
    pub tolerance: Tolerance,
    pub results: Value,
    /// The mathematical statement the command exercises.
    pub anchor: String,
    /// Failed assertions; non-empty only with exit code 4.
    #[serde(default)]
    pub violations: Vec<String>,
    pub exit_code: i32,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}
