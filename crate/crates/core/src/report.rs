//! Structured pass/fail reports for the verification routines.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub check: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    /// Number of individual identities compared.
    pub compared: usize,
    pub failures: Vec<Value>,
    /// Kept out of the serialized form so reports are reproducible.
    #[serde(skip)]
    pub wall_time: Duration,
    #[serde(skip)]
    started: Option<Instant>,
}

impl Report {
    pub fn new(check: &str) -> Self {
        Report {
            check: check.to_string(),
            params: BTreeMap::new(),
            status: Status::Pass,
            compared: 0,
            failures: Vec::new(),
            wall_time: Duration::ZERO,
            started: Some(Instant::now()),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    /// Records one comparison; `failure` is `Some` when it did not hold.
    pub fn record(&mut self, failure: Option<Value>) {
        self.compared += 1;
        if let Some(f) = failure {
            self.failures.push(f);
            self.status = Status::Fail;
        }
    }

    pub fn fail(&mut self, failure: Value) {
        self.record(Some(failure));
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn finish(mut self) -> Self {
        if let Some(t) = self.started.take() {
            self.wall_time = t.elapsed();
        }
        self
    }

    /// Folds another report's comparisons into this one.
    pub fn absorb(&mut self, other: Report) {
        self.compared += other.compared;
        for f in other.failures {
            self.failures
                .push(serde_json::json!({"check": other.check, "failure": f}));
            self.status = Status::Fail;
        }
    }
}
