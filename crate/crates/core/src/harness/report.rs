use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::diffop::Order;
use crate::error::Error;
use crate::json::{matrix_to_rows, Json};
use crate::matrix::MatrixPoly;
use crate::poly::VarSpace;

use super::config::SuiteConfig;
use super::random::trial_rng;

/// Anything that can be shown in a counterexample.
pub trait Witness {
    fn witness(&self) -> Value;
}

impl<T: Json> Witness for T {
    fn witness(&self) -> Value {
        self.to_json_value()
    }
}

impl<S: VarSpace> Witness for MatrixPoly<S> {
    fn witness(&self) -> Value {
        serde_json::json!(matrix_to_rows(self))
    }
}

impl<A: Witness, B: Witness> Witness for (A, B) {
    fn witness(&self) -> Value {
        Value::Array(vec![self.0.witness(), self.1.witness()])
    }
}

impl Witness for Order {
    fn witness(&self) -> Value {
        self.to_json_value()
    }
}

impl Witness for bool {
    fn witness(&self) -> Value {
        Value::Bool(*self)
    }
}

impl Witness for usize {
    fn witness(&self) -> Value {
        Value::from(*self)
    }
}

impl Witness for String {
    fn witness(&self) -> Value {
        Value::String(self.clone())
    }
}

impl Witness for &str {
    fn witness(&self) -> Value {
        Value::String((*self).to_owned())
    }
}

impl<T: Witness> Witness for Vec<T> {
    fn witness(&self) -> Value {
        Value::Array(self.iter().map(Witness::witness).collect())
    }
}

impl<T: Witness> Witness for Option<T> {
    fn witness(&self) -> Value {
        self.as_ref().map_or(Value::Null, Witness::witness)
    }
}

impl<T: Witness> Witness for Result<T, Error> {
    fn witness(&self) -> Value {
        match self {
            Ok(v) => v.witness(),
            Err(e) => serde_json::json!({ "error": e.to_string() }),
        }
    }
}

/// A failed trial, before the trial index is attached.
#[derive(Clone, Debug)]
pub struct Failure {
    pub note: String,
    pub inputs: Vec<Value>,
    pub lhs: Value,
    pub rhs: Value,
}

impl Failure {
    pub fn new(note: impl Into<String>) -> Self {
        Failure {
            note: note.into(),
            inputs: Vec::new(),
            lhs: Value::Null,
            rhs: Value::Null,
        }
    }

    pub fn input(mut self, value: &dyn Witness) -> Self {
        self.inputs.push(value.witness());
        self
    }

    pub fn sides(mut self, lhs: &dyn Witness, rhs: &dyn Witness) -> Self {
        self.lhs = lhs.witness();
        self.rhs = rhs.witness();
        self
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::new(format!("unexpected error: {e}"))
    }
}

pub type TrialResult = Result<(), Failure>;

/// Fails the enclosing trial unless both sides are equal.
#[macro_export]
macro_rules! ensure_eq {
    ($lhs:expr, $rhs:expr, $note:expr $(, $input:expr)* $(,)?) => {{
        let (lhs, rhs) = (&$lhs, &$rhs);
        if lhs != rhs {
            return Err($crate::harness::report::Failure::new($note)
                $(.input(&$input))*
                .sides(lhs, rhs));
        }
    }};
}

/// Fails the enclosing trial unless the condition holds.
#[macro_export]
macro_rules! ensure {
    ($cond:expr, $note:expr $(, $input:expr)* $(,)?) => {{
        if !$cond {
            return Err($crate::harness::report::Failure::new($note)$(.input(&$input))*);
        }
    }};
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    pub note: String,
    pub inputs: Vec<Value>,
    pub lhs: Value,
    pub rhs: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyOutcome {
    pub name: String,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl PropertyOutcome {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// Runs `check` on `trials` independent seeded streams in parallel. The
/// reported counterexample is the one with the lowest trial index.
pub fn run_property<F>(name: &str, trials: usize, seed: u64, check: F) -> PropertyOutcome
where
    F: Fn(&mut ChaCha8Rng, usize) -> TrialResult + Sync,
{
    let results: Vec<TrialResult> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, name, trial);
            catch_unwind(AssertUnwindSafe(|| check(&mut rng, trial))).unwrap_or_else(|payload| {
                let msg = payload
                    .downcast_ref::<&str>()
                    .map(|s| s.to_string())
                    .or_else(|| payload.downcast_ref::<String>().cloned())
                    .unwrap_or_else(|| "panic".into());
                Err(Failure::new(format!("panicked: {msg}")))
            })
        })
        .collect();
    let failed = results.iter().filter(|r| r.is_err()).count();
    let counterexample = results.into_iter().enumerate().find_map(|(trial, r)| {
        r.err().map(|f| Counterexample {
            trial,
            note: f.note,
            inputs: f.inputs,
            lhs: f.lhs,
            rhs: f.rhs,
        })
    });
    PropertyOutcome {
        name: name.to_owned(),
        trials,
        passed: trials - failed,
        failed,
        counterexample,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub properties: Vec<PropertyOutcome>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub config: SuiteConfig,
    pub suites: Vec<SuiteReport>,
    pub total_properties: usize,
    pub failed_properties: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<u128>,
}

impl Report {
    pub fn new(config: SuiteConfig, suites: Vec<SuiteReport>) -> Self {
        let all = suites.iter().flat_map(|s| &s.properties);
        let total_properties = all.clone().count();
        let failed_properties = all.filter(|p| !p.ok()).count();
        Report {
            config,
            suites,
            total_properties,
            failed_properties,
            duration_ms: None,
        }
    }

    pub fn ok(&self) -> bool {
        self.failed_properties == 0
    }

    pub fn property(&self, name: &str) -> Option<&PropertyOutcome> {
        self.suites
            .iter()
            .flat_map(|s| &s.properties)
            .find(|p| p.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for suite in &self.suites {
            let _ = writeln!(out, "[{}]", suite.suite);
            for p in &suite.properties {
                let tag = if p.ok() { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "  {tag} {} ({}/{})", p.name, p.passed, p.trials);
                if let Some(c) = &p.counterexample {
                    let _ = writeln!(out, "       trial {}: {}", c.trial, c.note);
                    for input in &c.inputs {
                        let _ = writeln!(out, "       input: {input}");
                    }
                    if !c.lhs.is_null() || !c.rhs.is_null() {
                        let _ = writeln!(out, "       lhs:   {}", c.lhs);
                        let _ = writeln!(out, "       rhs:   {}", c.rhs);
                    }
                }
            }
        }
        let _ = writeln!(
            out,
            "{} of {} properties failed",
            self.failed_properties, self.total_properties
        );
        if let Some(ms) = self.duration_ms {
            let _ = writeln!(out, "elapsed {ms} ms");
        }
        out
    }
}
