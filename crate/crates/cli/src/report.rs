use serde::Serialize;
use serde_json::{json, Value};

use crate::args::Format;
use crate::error::{CliError, Result};

/// Outcome of one subcommand, renderable in every supported format.
pub struct Report {
    pub command: &'static str,
    pub failures: Vec<Value>,
    pub body: Value,
    pub text: String,
    pub csv: Option<String>,
}

impl Report {
    pub fn new(command: &'static str, body: impl Serialize, text: String) -> Self {
        Report {
            command,
            failures: Vec::new(),
            body: serde_json::to_value(body).expect("report serializes"),
            text,
            csv: None,
        }
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn fail(&mut self, failure: impl Serialize) {
        self.failures.push(serde_json::to_value(failure).expect("failure serializes"));
    }

    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => {
                let doc = json!({
                    "command": self.command,
                    "pass": self.pass(),
                    "failures": self.failures,
                    "report": self.body,
                });
                Ok(serde_json::to_string_pretty(&doc).expect("json") + "\n")
            }
            Format::Csv => self.csv.clone().ok_or(CliError::Format {
                format: "csv",
                command: self.command,
            }),
            Format::Text => {
                let mut out = self.text.clone();
                if !out.ends_with('\n') {
                    out.push('\n');
                }
                out.push_str(if self.pass() { "verdict: pass\n" } else { "verdict: FAIL\n" });
                Ok(out)
            }
        }
    }
}

/// Columns of a CSV document from rows of displayable cells.
pub fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
