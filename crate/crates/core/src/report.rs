//! Command reports.
//!
//! Every command produces one [`Report`]. Its JSON form is versioned by the
//! top-level `"schema"` field and always carries the tolerance block the
//! verdict was taken under. Field order is fixed, so identical inputs give
//! byte-identical output.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::linalg::Tolerance;

pub const SCHEMA_VERSION: u32 = 1;

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExitStatus {
    Affirmative = 0,
    Negative = 1,
    InputError = 2,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn from_verdict(verdict: bool) -> Self {
        if verdict {
            Self::Affirmative
        } else {
            Self::Negative
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn new(path: impl Into<String>, bytes: &[u8]) -> Self {
        let hash = Sha256::digest(bytes);
        Self {
            path: path.into(),
            sha256: hash.iter().map(|b| format!("{b:02x}")).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub verdict: Option<bool>,
    pub exit_code: i32,
    pub tolerance: Tolerance,
    pub result: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    pub fn new(command: impl Into<String>, tolerance: Tolerance) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            command: command.into(),
            inputs: Vec::new(),
            verdict: None,
            exit_code: ExitStatus::InputError.code(),
            tolerance,
            result: Value::Null,
            notes: Vec::new(),
            out: None,
            error: None,
        }
    }

    pub fn with_verdict(mut self, verdict: bool) -> Self {
        self.verdict = Some(verdict);
        self.exit_code = ExitStatus::from_verdict(verdict).code();
        self
    }

    pub fn with_result(mut self, result: impl Serialize) -> Self {
        self.result = serde_json::to_value(result).expect("report values are serializable");
        self
    }

    pub fn failed(mut self, message: impl Into<String>) -> Self {
        self.verdict = None;
        self.exit_code = ExitStatus::InputError.code();
        self.error = Some(message.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are serializable") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        let verdict = match self.verdict {
            Some(true) => "affirmative",
            Some(false) => "negative",
            None => "none",
        };
        out += &format!("verdict: {verdict} (exit {})\n", self.exit_code);
        if let Some(e) = &self.error {
            out += &format!("error: {e}\n");
        }
        let t = &self.tolerance;
        out += &format!(
            "tolerance: rank_rel={:e} eig_abs={:e} equality_abs={:e}\n",
            t.rank_rel, t.eig_abs, t.equality_abs
        );
        for input in &self.inputs {
            out += &format!("input: {} sha256={}\n", input.path, input.sha256);
        }
        match &self.result {
            Value::Object(map) => {
                for (k, v) in map {
                    out += &format!("{k}: {}\n", compact(v));
                }
            }
            Value::Null => {}
            v => out += &format!("result: {}\n", compact(v)),
        }
        if let Some(path) = &self.out {
            out += &format!("wrote: {path}\n");
        }
        for note in &self.notes {
            out += &format!("note: {note}\n");
        }
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(
            InputDigest::new("x", b"").sha256,
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn json_has_schema_and_tolerance_first() {
        let r = Report::new("check-basis", Tolerance::default())
            .with_verdict(false)
            .with_result(serde_json::json!({"rank": 1}));
        let text = r.to_json();
        assert!(text.starts_with("{\n  \"schema\": 1,\n  \"command\": \"check-basis\""));
        assert!(text.contains("\"equality_abs\": 1e-9"));
        assert_eq!(r.exit_code, 1);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["tolerance"]["eig_abs"], 1e-8);
    }

    #[test]
    fn text_lists_result_fields() {
        let r = Report::new("multiplier hilbert", Tolerance::default())
            .with_verdict(true)
            .with_result(serde_json::json!({"kernel_dim": 31}));
        assert!(r.to_text().contains("kernel_dim: 31\n"));
        assert!(r.to_text().contains("verdict: affirmative (exit 0)"));
    }
}
