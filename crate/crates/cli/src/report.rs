//! Report structure and its JSON and text forms. Result fields are kept in a
//! sorted map so the output is byte-stable.

use serde::Serialize;
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Violated,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommandResult {
    pub line: usize,
    pub command: String,
    pub status: Status,
    /// Unmet expectations, or the error message.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
    #[serde(flatten)]
    pub data: Map<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub results: Vec<CommandResult>,
}

impl Default for Report {
    fn default() -> Self {
        Report { schema_version: SCHEMA_VERSION, results: Vec::new() }
    }
}

impl Report {
    pub fn all_ok(&self) -> bool {
        self.results.iter().all(|r| r.status == Status::Ok)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

pub fn emit(report: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Json => serde_json::to_vec(report).expect("report serializes"),
        Format::Text => text(report).into_bytes(),
    }
}

fn text(report: &Report) -> String {
    let mut out = String::new();
    for r in &report.results {
        let status = match r.status {
            Status::Ok => "ok",
            Status::Violated => "VIOLATED",
            Status::Error => "ERROR",
        };
        out.push_str(&format!("line {}: {} [{status}]\n", r.line, r.command));
        for f in &r.failures {
            out.push_str(&format!("  ! {f}\n"));
        }
        for (k, v) in &r.data {
            out.push_str(&format!("  {k}: {}\n", render(v)));
        }
    }
    let bad = report.results.iter().filter(|r| r.status != Status::Ok).count();
    out.push_str(&format!("{} command(s), {bad} not ok\n", report.results.len()));
    out
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report() {
        assert_eq!(emit(&Report::default(), Format::Json), br#"{"schema_version":1,"results":[]}"#);
    }

    #[test]
    fn flattened_fields_are_sorted() {
        let mut data = Map::new();
        data.insert("zeta".into(), Value::Bool(true));
        data.insert("alpha".into(), Value::from(3));
        let r = CommandResult { line: 2, command: "cmd kpar z".into(), status: Status::Ok, failures: vec![], data };
        let report = Report { schema_version: 1, results: vec![r] };
        let json = String::from_utf8(emit(&report, Format::Json)).unwrap();
        assert_eq!(json, r#"{"schema_version":1,"results":[{"line":2,"command":"cmd kpar z","status":"ok","alpha":3,"zeta":true}]}"#);
        let text = String::from_utf8(emit(&report, Format::Text)).unwrap();
        assert!(text.starts_with("line 2: cmd kpar z [ok]\n  alpha: 3\n  zeta: true\n"));
    }
}
