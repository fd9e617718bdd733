//! Command reports: a structured payload per command, rendered either as
//! human-readable text or as one JSON record per result. Reports carry no
//! timestamps, so repeated runs on the same input are byte-identical.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportStatus {
    Ok,
    CheckFailed,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: Value,
    pub status: ReportStatus,
    pub results: Vec<Value>,
    pub violations: Vec<String>,
}

impl Report {
    pub fn ok(command: Value, results: Vec<Value>) -> Self {
        Report { command, status: ReportStatus::Ok, results, violations: Vec::new() }
    }

    pub fn checked(command: Value, results: Vec<Value>, violations: Vec<String>) -> Self {
        let status =
            if violations.is_empty() { ReportStatus::Ok } else { ReportStatus::CheckFailed };
        Report { command, status, results, violations }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            ReportStatus::Ok => 0,
            ReportStatus::CheckFailed => 1,
        }
    }

    pub fn render_machine(&self) -> String {
        let mut out = String::new();
        let header = serde_json::json!({
            "command": self.command,
            "status": self.status,
            "violations": self.violations,
        });
        out.push_str(&serde_json::to_string(&header).expect("serializable"));
        out.push('\n');
        for r in &self.results {
            out.push_str(&serde_json::to_string(r).expect("serializable"));
            out.push('\n');
        }
        out
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "command: {}\n",
            serde_json::to_string(&self.command).expect("serializable")
        ));
        out.push_str(&format!(
            "status: {}\n",
            match self.status {
                ReportStatus::Ok => "ok",
                ReportStatus::CheckFailed => "check failed",
            }
        ));
        for r in &self.results {
            out.push_str(&render_value_line(r));
        }
        if !self.violations.is_empty() {
            out.push_str("violations:\n");
            for v in &self.violations {
                out.push_str(&format!("  - {v}\n"));
            }
        }
        out
    }
}

fn render_value_line(value: &Value) -> String {
    match value {
        Value::Object(map) => {
            let parts: Vec<String> = map
                .iter()
                .map(|(k, v)| match v {
                    Value::String(s) => format!("{k}={s}"),
                    other => format!("{k}={other}"),
                })
                .collect();
            format!("  {}\n", parts.join("  "))
        }
        other => format!("  {other}\n"),
    }
}
