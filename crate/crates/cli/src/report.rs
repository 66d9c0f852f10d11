use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_FAULT: i32 = 3;

/// What a failed check means.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    /// The check is a theorem; failure is an internal fault.
    Theorem,
    /// The check can legitimately fail; failure is a mathematical violation.
    Refutation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckTally {
    pub name: String,
    pub severity: Severity,
    pub cases: u64,
    pub failures: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    Input,
    Fault,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseError {
    pub case: usize,
    pub line: Option<usize>,
    pub kind: ErrorKind,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Meta {
    pub seed: u64,
    pub cases: usize,
    pub dims: [usize; 2],
    pub magnitude: i64,
    pub orders: Vec<u32>,
    pub input: Option<String>,
    /// Wall-clock time; the only field allowed to differ between identical runs.
    pub elapsed_ms: u64,
}

/// Outcome of one subcommand run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub meta: Meta,
    pub checks: Vec<CheckTally>,
    pub errors: Vec<CaseError>,
    pub details: Vec<Value>,
    pub verdict: Verdict,
    #[serde(skip)]
    index: HashMap<String, usize>,
}

impl Report {
    pub fn new(command: &str, config: &RunConfig, input: Option<String>) -> Report {
        Report {
            command: command.to_string(),
            meta: Meta {
                seed: config.seed,
                cases: config.cases,
                dims: [config.dims.lo, config.dims.hi],
                magnitude: config.magnitude,
                orders: config.probe_orders.clone(),
                input,
                elapsed_ms: 0,
            },
            checks: Vec::new(),
            errors: Vec::new(),
            details: Vec::new(),
            verdict: Verdict::Pass,
            index: HashMap::new(),
        }
    }

    /// Adds one case to the named check.
    pub fn record(&mut self, name: &str, severity: Severity, ok: bool) -> bool {
        let index = match self.index.get(name) {
            Some(i) => *i,
            None => {
                self.index.insert(name.to_string(), self.checks.len());
                self.checks.push(CheckTally {
                    name: name.to_string(),
                    severity,
                    cases: 0,
                    failures: 0,
                });
                self.checks.len() - 1
            }
        };
        let tally = &mut self.checks[index];
        tally.cases += 1;
        if !ok {
            tally.failures += 1;
        }
        ok
    }

    pub fn theorem(&mut self, name: &str, ok: bool) -> bool {
        self.record(name, Severity::Theorem, ok)
    }

    pub fn error(&mut self, case: usize, line: Option<usize>, kind: ErrorKind, message: impl Into<String>) {
        self.errors.push(CaseError {
            case,
            line,
            kind,
            message: message.into(),
        });
    }

    pub fn failed_checks(&self) -> u64 {
        self.checks.iter().map(|c| c.failures).sum()
    }

    pub fn faults(&self) -> u64 {
        let failed: u64 = self
            .checks
            .iter()
            .filter(|c| c.severity == Severity::Theorem)
            .map(|c| c.failures)
            .sum();
        failed + self.errors.iter().filter(|e| e.kind == ErrorKind::Fault).count() as u64
    }

    pub fn violations(&self) -> u64 {
        self.checks
            .iter()
            .filter(|c| c.severity == Severity::Refutation)
            .map(|c| c.failures)
            .sum()
    }

    pub fn input_errors(&self) -> usize {
        self.errors.iter().filter(|e| e.kind == ErrorKind::Input).count()
    }

    /// Sets the verdict: pass iff no check failed and no fault was raised.
    pub fn finish(&mut self, elapsed_ms: u64) {
        self.meta.elapsed_ms = elapsed_ms;
        self.errors.sort_by_key(|e| e.case);
        self.verdict = if self.failed_checks() == 0 && self.faults() == 0 {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
    }

    /// 3 on any fault, else 1 on any violation, else 2 on any input error, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.faults() > 0 {
            EXIT_FAULT
        } else if self.violations() > 0 {
            EXIT_VIOLATION
        } else if self.input_errors() > 0 {
            EXIT_INPUT
        } else {
            EXIT_PASS
        }
    }

    pub fn to_structured(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Human-readable rendering. Omits timing so identical runs render identically.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let m = &self.meta;
        let _ = writeln!(
            out,
            "schwarz {}  seed={} cases={} dims={}..{} magnitude={} orders={:?}",
            self.command, m.seed, m.cases, m.dims[0], m.dims[1], m.magnitude, m.orders
        );
        if let Some(input) = &m.input {
            let _ = writeln!(out, "input: {input}");
        }
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let _ = writeln!(
                out,
                "  {:<width$}  {:>8} cases  {:>6} failed",
                c.name, c.cases, c.failures
            );
        }
        for d in &self.details {
            if let Some(summary) = d.get("summary").and_then(Value::as_str) {
                let _ = writeln!(out, "  {summary}");
            }
        }
        for e in &self.errors {
            let kind = match e.kind {
                ErrorKind::Input => "input error",
                ErrorKind::Fault => "FAULT",
            };
            match e.line {
                Some(line) => {
                    let _ = writeln!(out, "  case {} (line {line}): {kind}: {}", e.case, e.message);
                }
                None => {
                    let _ = writeln!(out, "  case {}: {kind}: {}", e.case, e.message);
                }
            }
        }
        let verdict = match self.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        };
        let _ = writeln!(
            out,
            "verdict: {verdict} (faults {}, violations {}, input errors {})",
            self.faults(),
            self.violations(),
            self.input_errors()
        );
        out
    }
}
