//! Verification reports shared by every suite.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::qcore::{Agreement, QSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseResult {
    pub id: String,
    pub status: Status,
    pub detail: String,
}

impl CaseResult {
    pub fn pass(id: impl Into<String>, detail: impl Into<String>) -> Self {
        CaseResult {
            id: id.into(),
            status: Status::Pass,
            detail: detail.into(),
        }
    }

    pub fn fail(id: impl Into<String>, detail: impl Into<String>) -> Self {
        CaseResult {
            id: id.into(),
            status: Status::Fail,
            detail: detail.into(),
        }
    }

    pub fn skipped(id: impl Into<String>, detail: impl Into<String>) -> Self {
        CaseResult {
            id: id.into(),
            status: Status::Skipped,
            detail: detail.into(),
        }
    }

    /// Pass iff `lhs` and `rhs` agree on their common known range.
    pub fn compare(id: impl Into<String>, lhs: &QSeries, rhs: &QSeries) -> Self {
        Self::from_agreement(id, lhs.agreement(rhs))
    }

    pub fn from_agreement(id: impl Into<String>, ag: Agreement) -> Self {
        match ag {
            Agreement::Equal { .. } => CaseResult::pass(id, ag.to_string()),
            Agreement::Mismatch { .. } => CaseResult::fail(id, ag.to_string()),
        }
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    /// Formula being checked, written out.
    pub identity: String,
    pub params: Map<String, Value>,
    pub cases: Vec<CaseResult>,
    /// Kept out of the JSON so reports are byte-identical across runs.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SuiteReport {
    pub fn new(suite: &str, identity: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            identity: identity.to_string(),
            params: Map::new(),
            cases: Vec::new(),
            wall_time: Duration::ZERO,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    /// Evaluates `check` on every input in parallel; case order follows the
    /// input order regardless of scheduling.
    pub fn run<T, F>(mut self, inputs: Vec<T>, check: F) -> Self
    where
        T: Send,
        F: Fn(T) -> Vec<CaseResult> + Sync + Send,
    {
        let start = Instant::now();
        let results: Vec<Vec<CaseResult>> = inputs.into_par_iter().map(check).collect();
        self.cases.extend(results.into_iter().flatten());
        self.wall_time += start.elapsed();
        self
    }

    pub fn push(&mut self, case: CaseResult) {
        self.cases.push(case);
    }

    pub fn passed(&self) -> bool {
        !self.cases.iter().any(CaseResult::is_fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.cases.iter().filter(|c| c.status == status).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| c.is_fail())
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} pass, {} fail, {} skipped",
            self.suite,
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped)
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// `suite,id,status,detail` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,id,status,detail\n");
        for c in &self.cases {
            out.push_str(&format!(
                "{},{},{},{}\n",
                csv_field(&self.suite),
                csv_field(&c.id),
                c.status,
                csv_field(&c.detail)
            ));
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn run_preserves_input_order() {
        let r = SuiteReport::new("t", "x = x").run((0..200).collect(), |i: i32| {
            vec![CaseResult::pass(format!("{i}"), "")]
        });
        let ids: Vec<String> = r.cases.iter().map(|c| c.id.clone()).collect();
        let expected: Vec<String> = (0..200).map(|i| i.to_string()).collect();
        assert_eq!(ids, expected);
        assert!(r.passed());
    }

    #[test]
    fn json_omits_wall_time() {
        let mut r = SuiteReport::new("t", "x = x").param("p", 3);
        r.push(CaseResult::fail("a", "bad"));
        let j = r.to_json();
        assert!(!j.contains("wall"));
        assert!(j.contains("\"status\": \"fail\""));
        assert!(!r.passed());
    }

    #[test]
    fn csv_quotes_commas() {
        let mut r = SuiteReport::new("s", "");
        r.push(CaseResult::pass("a,b", "ok"));
        assert_eq!(r.to_csv(), "suite,id,status,detail\ns,\"a,b\",pass,ok\n");
    }
}
