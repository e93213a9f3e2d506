//! Verification checks and the report they roll up into.

use crate::io::num;
use serde::Serialize;
use serde_json::{json, Value};

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Published reference value.
    Reference,
    /// Independent numerical route (grid solver, second algorithm).
    Oracle,
    /// Exact analytic consequence.
    Derived,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Reference => "reference",
            Provenance::Oracle => "oracle",
            Provenance::Derived => "derived",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Comparison {
    /// `|observed − expected| ≤ tolerance`.
    Close { expected: f64, tolerance: f64 },
    /// `observed < bound`.
    Below { bound: f64 },
    /// `lo < observed < hi`.
    Inside { lo: f64, hi: f64 },
    /// `observed == 1` (a property that either holds or not).
    Holds,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub id: String,
    pub criterion: u32,
    pub description: String,
    pub observed: f64,
    pub comparison: Comparison,
    pub provenance: Provenance,
    pub citation: String,
    pub pass: bool,
}

impl Check {
    pub fn new(
        id: impl Into<String>,
        criterion: u32,
        description: impl Into<String>,
        observed: f64,
        comparison: Comparison,
        provenance: Provenance,
        citation: impl Into<String>,
    ) -> Self {
        let pass = observed.is_finite()
            && match comparison {
                Comparison::Close { expected, tolerance } => (observed - expected).abs() <= tolerance,
                Comparison::Below { bound } => observed < bound,
                Comparison::Inside { lo, hi } => lo < observed && observed < hi,
                Comparison::Holds => observed == 1.0,
            };
        Self {
            id: id.into(),
            criterion,
            description: description.into(),
            observed,
            comparison,
            provenance,
            citation: citation.into(),
            pass,
        }
    }

    #[allow(clippy::too_many_arguments)]
    pub fn close(
        id: impl Into<String>,
        criterion: u32,
        description: impl Into<String>,
        expected: f64,
        observed: f64,
        tolerance: f64,
        provenance: Provenance,
        citation: impl Into<String>,
    ) -> Self {
        Self::new(id, criterion, description, observed, Comparison::Close { expected, tolerance }, provenance, citation)
    }

    pub fn below(
        id: impl Into<String>,
        criterion: u32,
        description: impl Into<String>,
        observed: f64,
        bound: f64,
        provenance: Provenance,
        citation: impl Into<String>,
    ) -> Self {
        Self::new(id, criterion, description, observed, Comparison::Below { bound }, provenance, citation)
    }

    pub fn holds(
        id: impl Into<String>,
        criterion: u32,
        description: impl Into<String>,
        ok: bool,
        provenance: Provenance,
        citation: impl Into<String>,
    ) -> Self {
        let observed = if ok { 1.0 } else { 0.0 };
        Self::new(id, criterion, description, observed, Comparison::Holds, provenance, citation)
    }

    pub fn to_json(&self) -> Value {
        let (kind, expected, tolerance, lo, hi) = match self.comparison {
            Comparison::Close { expected, tolerance } => ("close", num(expected), num(tolerance), Value::Null, Value::Null),
            Comparison::Below { bound } => ("below", num(0.0), num(bound), Value::Null, Value::Null),
            Comparison::Inside { lo, hi } => ("inside", Value::Null, Value::Null, num(lo), num(hi)),
            Comparison::Holds => ("holds", num(1.0), num(0.0), Value::Null, Value::Null),
        };
        json!({
            "id": self.id,
            "criterion": self.criterion,
            "description": self.description,
            "kind": kind,
            "expected": expected,
            "tolerance": tolerance,
            "lower": lo,
            "upper": hi,
            "observed": num(self.observed),
            "pass": self.pass,
            "provenance": self.provenance.as_str(),
            "citation": self.citation,
        })
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        let status = if self.pass { "PASS" } else { "FAIL" };
        let detail = match self.comparison {
            Comparison::Close { expected, tolerance } => {
                format!("observed {:.10} expected {:.10} tol {:.1e}", self.observed, expected, tolerance)
            }
            Comparison::Below { bound } => format!("observed {:.3e} < {:.1e}", self.observed, bound),
            Comparison::Inside { lo, hi } => format!("observed {:.6} in ({lo:e}, {hi:e})", self.observed),
            Comparison::Holds => String::new(),
        };
        format!("{status} [{}] {} {detail}", self.id, self.description)
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    /// Extra context (resolved conventions, flagged inconsistencies).
    pub notes: Vec<(String, String)>,
}

impl VerificationReport {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = Check>) {
        self.checks.extend(cs);
    }

    pub fn overall(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Pass flag per criterion number, in order.
    pub fn by_criterion(&self) -> Vec<(u32, bool)> {
        let mut ids: Vec<u32> = self.checks.iter().map(|c| c.criterion).collect();
        ids.sort_unstable();
        ids.dedup();
        ids.into_iter()
            .map(|k| (k, self.checks.iter().filter(|c| c.criterion == k).all(|c| c.pass)))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let notes: serde_json::Map<String, Value> =
            self.notes.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
        json!({
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
            "overall": self.overall(),
            "passed": self.checks.iter().filter(|c| c.pass).count(),
            "total": self.checks.len(),
            "notes": notes,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comparisons() {
        let c = Check::close("a", 1, "x", 1.0, 1.0004, 5e-4, Provenance::Reference, "");
        assert!(c.pass);
        let c = Check::close("a", 1, "x", 1.0, 1.0006, 5e-4, Provenance::Reference, "");
        assert!(!c.pass);
        assert!(!Check::below("b", 2, "r", f64::NAN, 1.0, Provenance::Derived, "").pass);
        let c = Check::new("c", 3, "g", 0.005, Comparison::Inside { lo: 1e-3, hi: 1e-2 }, Provenance::Reference, "");
        assert!(c.pass);
    }

    #[test]
    fn overall_requires_every_check() {
        let mut r = VerificationReport::default();
        assert!(!r.overall());
        r.push(Check::holds("a", 1, "ok", true, Provenance::Derived, ""));
        assert!(r.overall());
        r.push(Check::holds("b", 2, "bad", false, Provenance::Derived, ""));
        assert!(!r.overall());
        assert_eq!(r.by_criterion(), vec![(1, true), (2, false)]);
        assert_eq!(r.to_json()["overall"], json!(false));
    }
}
