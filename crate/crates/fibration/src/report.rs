//! Machine-readable analysis reports: the JSON contract of the CLI.

use crate::fibration::FibrationAnalysis;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// One named check with a status of `pass`, `fail`, `skip`, or
/// `heuristic-pass`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: String,
    pub details: String,
}

impl CheckResult {
    pub fn pass(name: &str, details: impl Into<String>) -> Self {
        CheckResult { name: name.to_string(), status: "pass".to_string(), details: details.into() }
    }

    pub fn fail(name: &str, details: impl Into<String>) -> Self {
        CheckResult { name: name.to_string(), status: "fail".to_string(), details: details.into() }
    }

    pub fn skip(name: &str, details: impl Into<String>) -> Self {
        CheckResult { name: name.to_string(), status: "skip".to_string(), details: details.into() }
    }

    pub fn heuristic_pass(name: &str, details: impl Into<String>) -> Self {
        CheckResult {
            name: name.to_string(),
            status: "heuristic-pass".to_string(),
            details: details.into(),
        }
    }

    pub fn of(name: &str, ok: bool, details: impl Into<String>) -> Self {
        if ok {
            Self::pass(name, details)
        } else {
            Self::fail(name, details)
        }
    }

    pub fn is_fail(&self) -> bool {
        self.status == "fail"
    }
}

/// Full analysis report. Serialization round-trips losslessly and the
/// field order is fixed, so repeated runs with one seed are byte-identical.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationReport {
    pub input: String,
    pub n: usize,
    pub k: usize,
    pub a1_ok: bool,
    pub a2_ok: bool,
    pub kernel_basis: Vec<String>,
    /// Reduced Pluecker coordinates keyed by 1-based column tuples
    /// (`"2"` or `"1,3"`).
    pub reduced_pluecker: BTreeMap<String, String>,
    pub singular_generators: Vec<String>,
    pub checks: Vec<CheckResult>,
}

impl FibrationReport {
    /// Shared body of every successful analysis report.
    pub fn from_analysis(
        input: String,
        vars: &[String],
        analysis: &FibrationAnalysis,
        checks: Vec<CheckResult>,
    ) -> Self {
        let kernel_basis = analysis
            .kernel()
            .vectors()
            .iter()
            .map(|v| {
                let parts: Vec<String> =
                    v.iter().map(|p| p.display(vars).to_string()).collect();
                format!("({})", parts.join(", "))
            })
            .collect();
        let mut reduced_pluecker = BTreeMap::new();
        for (tuple, p) in analysis.pluecker().coordinates() {
            let key: Vec<String> = tuple.iter().map(|i| (i + 1).to_string()).collect();
            reduced_pluecker.insert(key.join(","), p.display(vars).to_string());
        }
        let singular_generators = analysis
            .singular_generators()
            .iter()
            .map(|p| p.display(vars).to_string())
            .collect();
        FibrationReport {
            input,
            n: analysis.ambient_dim(),
            k: analysis.k(),
            a1_ok: true,
            a2_ok: analysis.a2_ok(),
            kernel_basis,
            reduced_pluecker,
            singular_generators,
            checks,
        }
    }

    /// Report for a map rejected by assumption (A1); no kernel data.
    pub fn from_a1_failure(input: String, n: usize, k: usize) -> Self {
        let detail = if k == 0 {
            "k = 0: the map is constant".to_string()
        } else {
            format!("k = {k} = n: level sets are points")
        };
        FibrationReport {
            input,
            n,
            k,
            a1_ok: false,
            a2_ok: false,
            kernel_basis: Vec::new(),
            reduced_pluecker: BTreeMap::new(),
            singular_generators: Vec::new(),
            checks: vec![CheckResult::fail("a1", detail)],
        }
    }

    pub fn has_failure(&self) -> bool {
        self.checks.iter().any(|c| c.is_fail())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        use std::fmt::Write;
        writeln!(out, "input: {}", self.input).unwrap();
        writeln!(out, "n = {}, k = {}, a1_ok = {}, a2_ok = {}", self.n, self.k, self.a1_ok, self.a2_ok)
            .unwrap();
        if !self.kernel_basis.is_empty() {
            writeln!(out, "kernel basis:").unwrap();
            for v in &self.kernel_basis {
                writeln!(out, "  {v}").unwrap();
            }
        }
        if !self.reduced_pluecker.is_empty() {
            writeln!(out, "reduced Pluecker coordinates:").unwrap();
            for (k, v) in &self.reduced_pluecker {
                writeln!(out, "  [{k}] {v}").unwrap();
            }
        }
        if !self.checks.is_empty() {
            writeln!(out, "checks:").unwrap();
            for c in &self.checks {
                writeln!(out, "  {:<24} {:<15} {}", c.name, c.status, c.details).unwrap();
            }
        }
        out
    }
}
