use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::context::{Context, Resolution};
use super::ensemble::EnsembleSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// All criteria hold but a gated constant drifted under refinement.
    Unstable,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Unstable => "unstable",
            Status::Fail => "fail",
        })
    }
}

/// Whether the inequality bounds its left side from above (`LHS <= C RHS`)
/// or from below (`LHS >= c RHS`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Upper,
    Lower,
}

/// An empirical constant measured at both resolutions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalConstant {
    pub label: String,
    pub kind: BoundKind,
    pub coarse: f64,
    pub fine: f64,
    /// `max(fine/coarse, coarse/fine)`.
    pub drift: f64,
    /// Ungated constants are reported but do not affect stability.
    pub gated: bool,
    pub stable: bool,
}

/// A fixed-threshold requirement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Criterion {
    pub label: String,
    pub value: f64,
    pub requirement: String,
    pub passed: bool,
}

impl Criterion {
    pub fn at_most(label: impl Into<String>, value: f64, limit: f64) -> Self {
        Self { label: label.into(), value, requirement: format!("<= {limit:e}"), passed: value <= limit }
    }

    pub fn at_least(label: impl Into<String>, value: f64, limit: f64) -> Self {
        Self { label: label.into(), value, requirement: format!(">= {limit:e}"), passed: value >= limit }
    }

    pub fn above(label: impl Into<String>, value: f64, limit: f64) -> Self {
        Self { label: label.into(), value, requirement: format!("> {limit:e}"), passed: value > limit }
    }

    pub fn within(label: impl Into<String>, value: f64, lo: f64, hi: f64) -> Self {
        Self { label: label.into(), value, requirement: format!("in [{lo}, {hi}]"), passed: value >= lo && value <= hi }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub ensemble: EnsembleSpec,
    pub resolutions: [Resolution; 2],
    pub constants: Vec<EmpiricalConstant>,
    /// Ratio of the largest to smallest per-`j` constant on the fine level.
    pub j_spread: Option<f64>,
    pub criteria: Vec<Criterion>,
    pub metrics: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub details: serde_json::Value,
    pub notes: Vec<String>,
    pub stable: bool,
    pub pass: bool,
    pub status: Status,
    pub runtime_seconds: f64,
}

impl CheckReport {
    /// Largest drift among gated constants.
    pub fn max_drift(&self) -> f64 {
        self.constants.iter().filter(|c| c.gated).map(|c| c.drift).fold(1.0, f64::max)
    }

    pub fn constant(&self, label: &str) -> Option<&EmpiricalConstant> {
        self.constants.iter().find(|c| c.label == label)
    }

    pub fn criterion(&self, label: &str) -> Option<&Criterion> {
        self.criteria.iter().find(|c| c.label == label)
    }

    /// The report with its wall-clock field zeroed, for reproducibility
    /// comparisons.
    pub fn without_runtime(&self) -> Self {
        Self { runtime_seconds: 0.0, ..self.clone() }
    }
}

pub(crate) struct ReportBuilder {
    check: &'static str,
    ensemble: EnsembleSpec,
    resolutions: [Resolution; 2],
    drift_limit: f64,
    started: Instant,
    constants: Vec<EmpiricalConstant>,
    j_spread: Option<f64>,
    criteria: Vec<Criterion>,
    metrics: BTreeMap<String, f64>,
    details: serde_json::Value,
    notes: Vec<String>,
}

impl ReportBuilder {
    pub fn new(check: &'static str, ctx: &Context) -> Self {
        Self {
            check,
            ensemble: ctx.config.ensemble.clone(),
            resolutions: [ctx.coarse.resolution, ctx.fine.resolution],
            drift_limit: ctx.config.drift_limit,
            started: Instant::now(),
            constants: Vec::new(),
            j_spread: None,
            criteria: Vec::new(),
            metrics: BTreeMap::new(),
            details: serde_json::Value::Null,
            notes: Vec::new(),
        }
    }

    pub fn constant(&mut self, label: impl Into<String>, kind: BoundKind, [coarse, fine]: [f64; 2], gated: bool) {
        let drift = if coarse > 0.0 && fine > 0.0 { (fine / coarse).max(coarse / fine) } else { f64::INFINITY };
        self.constants.push(EmpiricalConstant {
            label: label.into(),
            kind,
            coarse,
            fine,
            drift,
            gated,
            stable: drift <= self.drift_limit,
        });
    }

    pub fn j_spread(&mut self, per_j: &[f64]) {
        let pos: Vec<f64> = per_j.iter().copied().filter(|v| *v > 0.0 && v.is_finite()).collect();
        if !pos.is_empty() {
            let hi = pos.iter().copied().fold(f64::MIN, f64::max);
            let lo = pos.iter().copied().fold(f64::MAX, f64::min);
            self.j_spread = Some(hi / lo);
        }
    }

    pub fn criterion(&mut self, c: Criterion) {
        self.criteria.push(c);
    }

    pub fn metric(&mut self, key: impl Into<String>, value: f64) {
        self.metrics.insert(key.into(), value);
    }

    pub fn details(&mut self, value: serde_json::Value) {
        self.details = value;
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn finish(self) -> CheckReport {
        let valid =
            self.constants.iter().all(|c| c.coarse.is_finite() && c.fine.is_finite() && c.coarse > 0.0 && c.fine > 0.0);
        let stable = self.constants.iter().filter(|c| c.gated).all(|c| c.stable);
        let criteria_ok = self.criteria.iter().all(|c| c.passed);
        let status = if !valid || !criteria_ok {
            Status::Fail
        } else if !stable {
            Status::Unstable
        } else {
            Status::Pass
        };
        CheckReport {
            check: self.check.to_string(),
            ensemble: self.ensemble,
            resolutions: self.resolutions,
            constants: self.constants,
            j_spread: self.j_spread,
            criteria: self.criteria,
            metrics: self.metrics,
            details: self.details,
            notes: self.notes,
            stable,
            pass: status == Status::Pass,
            status,
            runtime_seconds: self.started.elapsed().as_secs_f64(),
        }
    }
}
