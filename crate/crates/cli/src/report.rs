use std::collections::BTreeMap;
use std::time::Duration;

use serde_json::{json, Value};

/// Verdicts and certificates of one command. The machine form is
/// deterministic: sorted keys, canonical rational strings, no timing.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub passed: bool,
    pub fields: BTreeMap<String, Value>,
    pub elapsed: Duration,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            passed: true,
            fields: BTreeMap::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.insert(key.into(), value.into());
    }

    /// Records a check; a false value fails the report.
    pub fn check(&mut self, key: &str, ok: bool) {
        self.passed &= ok;
        self.set(key, ok);
    }

    pub fn machine(&self) -> String {
        let v = json!({ "command": self.command, "passed": self.passed, "report": self.fields });
        let mut s = serde_json::to_string_pretty(&v).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn human(&self) -> String {
        let mut s = format!(
            "{}: {}\n",
            self.command,
            if self.passed { "passed" } else { "FAILED" }
        );
        for (k, v) in &self.fields {
            let text = match v {
                Value::String(t) => t.clone(),
                other => other.to_string(),
            };
            s.push_str(&format!("  {k}: {text}\n"));
        }
        s.push_str(&format!("  time: {:.3}s\n", self.elapsed.as_secs_f64()));
        s
    }
}
