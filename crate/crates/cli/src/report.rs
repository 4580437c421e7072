use std::fmt::Write;

use clap::ValueEnum;
use oplab::report::SuiteReport;
use serde_json::{json, Value};

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub enum Status {
    Pass,
    Fail,
    Error(String),
}

pub struct Report {
    pub status: Status,
    pub checks: SuiteReport,
    pub result: Option<Value>,
    pub timing_ms: u64,
}

impl Report {
    pub fn finished(checks: SuiteReport, result: Option<Value>, timing_ms: u64) -> Self {
        let status = if checks.passed() { Status::Pass } else { Status::Fail };
        Report {
            status,
            checks,
            result,
            timing_ms,
        }
    }

    pub fn error(message: String, timing_ms: u64) -> Self {
        Report {
            status: Status::Error(message),
            checks: SuiteReport::new(),
            result: None,
            timing_ms,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error(_) => 2,
        }
    }

    fn status_name(&self) -> &'static str {
        match self.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error(_) => "error",
        }
    }

    /// Keys come out sorted: `serde_json` maps are ordered.
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "status": self.status_name(),
            "checks": self.checks.checks,
            "timing_ms": self.timing_ms,
        });
        if let Some(r) = &self.result {
            v["result"] = r.clone();
        }
        if let Status::Error(e) = &self.status {
            v["error"] = json!(e);
        }
        v
    }
}

pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.to_json()).unwrap();
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            for c in &report.checks.checks {
                let mark = if c.passed { "ok  " } else { "FAIL" };
                write!(s, "{mark} {} ({} cases)", c.name, c.cases).unwrap();
                if let Some(w) = &c.witness {
                    write!(s, ": {w}").unwrap();
                }
                s.push('\n');
            }
            if let Some(r) = &report.result {
                writeln!(s, "result: {r}").unwrap();
            }
            if let Status::Error(e) = &report.status {
                writeln!(s, "error: {e}").unwrap();
            }
            writeln!(s, "status: {} ({} ms)", report.status_name(), report.timing_ms).unwrap();
            s
        }
    }
}
