//! Versioned JSON report. Schema (version 1):
//!
//! ```text
//! { "schema_version": 1,
//!   "command": string,
//!   "records": [ { "check_id": string, "inputs": any,
//!                  "expected": { "value": any, "provenance": string },
//!                  "actual": any, "pass": bool, "wall_ms": number } ],
//!   "summary": { "total": int, "passed": int, "failed": int } }
//! ```
//!
//! Records are sorted by `check_id`. `wall_ms` is the only timing field.

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Expected {
    pub value: Value,
    /// `TRIVIAL`, or `DERIVED: <independent route>`.
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub check_id: String,
    pub inputs: Value,
    pub expected: Expected,
    pub actual: Value,
    pub pass: bool,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: &str, mut records: Vec<Record>) -> Self {
        records.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        let passed = records.iter().filter(|r| r.pass).count();
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            summary: Summary { total: records.len(), passed, failed: records.len() - passed },
            records,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    /// The report with every timing field zeroed, for comparisons.
    pub fn without_timing(&self) -> Report {
        let mut out = self.clone();
        for r in &mut out.records {
            r.wall_ms = 0.0;
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per record, rendered from the JSON data.
    pub fn render_table(&self) -> String {
        let width = self.records.iter().map(|r| r.check_id.len()).max().unwrap_or(0);
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&format!("{:<4} {:<width$}  {:>9.1} ms\n", if r.pass { "PASS" } else { "FAIL" }, r.check_id, r.wall_ms));
        }
        out.push_str(&format!("{} checks, {} passed, {} failed\n", self.summary.total, self.summary.passed, self.summary.failed));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn record(id: &str, pass: bool) -> Record {
        Record {
            check_id: id.into(),
            inputs: json!({}),
            expected: Expected { value: json!(1), provenance: "TRIVIAL".into() },
            actual: json!(if pass { 1 } else { 2 }),
            pass,
            wall_ms: 3.5,
        }
    }

    #[test]
    fn summary_and_order() {
        let r = Report::new("verify-all", vec![record("b", true), record("a", false)]);
        assert_eq!(r.records[0].check_id, "a");
        assert_eq!(r.summary, Summary { total: 2, passed: 1, failed: 1 });
        assert!(!r.all_pass());
        assert!(Report::new("verify-all", Vec::new()).all_pass());
    }

    #[test]
    fn json_round_trip() {
        let r = Report::new("roots", vec![record("x", true)]);
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.without_timing().records[0].wall_ms, 0.0);
    }
}
