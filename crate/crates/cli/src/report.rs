use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{HResult, HarnessError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    HypothesisNotMet,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    /// Fail dominates; all-unmet stays unmet; anything else passes.
    pub fn combine(items: impl IntoIterator<Item = Status>) -> Status {
        let (mut any_pass, mut any_unmet) = (false, false);
        for s in items {
            match s {
                Status::Fail => return Status::Fail,
                Status::Pass => any_pass = true,
                Status::HypothesisNotMet => any_unmet = true,
            }
        }
        if any_unmet && !any_pass {
            Status::HypothesisNotMet
        } else {
            Status::Pass
        }
    }

    pub fn json(self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }
}

/// `config` and `results` are the canonical part; `timing` is not.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub config: Value,
    pub results: BTreeMap<String, Value>,
    pub timing: Value,
}

impl CheckReport {
    pub fn new(config: Value) -> CheckReport {
        CheckReport { config, results: BTreeMap::new(), timing: json!({}) }
    }

    pub fn status_of(&self, check: &str) -> Option<&str> {
        self.results.get(check)?.get("status")?.as_str()
    }

    pub fn passed(&self) -> bool {
        self.results.values().all(|v| v.get("status").and_then(Value::as_str) != Some("fail"))
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.results
            .iter()
            .filter(|(_, v)| v.get("status").and_then(Value::as_str) == Some("fail"))
            .map(|(k, _)| k.as_str())
            .collect()
    }

    /// Canonical section only.
    pub fn canonical(&self) -> Value {
        json!({ "config": self.config, "results": self.results })
    }

    /// Key-sorted, two-space indented, newline-terminated.
    pub fn to_json(&self) -> String {
        let doc = json!({ "config": self.config, "results": self.results, "timing": self.timing });
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }
}

/// Writes to `path`, or to standard output when `path` is `None`.
pub fn emit_report(report: &CheckReport, path: Option<&Path>) -> HResult<()> {
    let text = report.to_json();
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| HarnessError::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| HarnessError::Io(e.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted_and_newline_terminated() {
        let mut r = CheckReport::new(json!({ "zeta": 1, "alpha": [2, 1] }));
        r.results.insert("koszul".into(), json!({ "status": "pass" }));
        r.results.insert("frobenius".into(), json!({ "status": "fail", "b": 1, "a": 2 }));
        let s = r.to_json();
        assert!(s.ends_with("}\n"));
        assert!(s.find("\"alpha\"").unwrap() < s.find("\"zeta\"").unwrap());
        assert!(s.find("\"frobenius\"").unwrap() < s.find("\"koszul\"").unwrap());
        assert!(s.find("\"config\"").unwrap() < s.find("\"results\"").unwrap());
        assert!(!r.passed());
        assert_eq!(r.failed_checks(), vec!["frobenius"]);
    }

    #[test]
    fn status_combination() {
        use Status::*;
        assert_eq!(Status::combine([Pass, HypothesisNotMet]), Pass);
        assert_eq!(Status::combine([Pass, Fail]), Fail);
        assert_eq!(Status::combine([HypothesisNotMet]), HypothesisNotMet);
        assert_eq!(Status::combine([]), Pass);
        assert_eq!(HypothesisNotMet.json(), json!("hypothesis-not-met"));
    }
}
