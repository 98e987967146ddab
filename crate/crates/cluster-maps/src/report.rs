//! Verification reports.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use quantum_torus::torus::TorusElement;
use skein_engine::SkeinElement;

/// Outcome of one exact comparison.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub inputs: Value,
    pub lhs: Value,
    pub rhs: Value,
    pub equal: bool,
    pub witness_term_on_failure: Option<Value>,
}

impl Report {
    /// Compares two torus elements.
    pub fn torus(check: &str, inputs: Value, lhs: &TorusElement, rhs: &TorusElement) -> Self {
        let equal = lhs == rhs;
        let witness = if equal { None } else { torus_witness(lhs, rhs) };
        Report {
            check: check.into(),
            inputs,
            lhs: json!(lhs.to_json()),
            rhs: json!(rhs.to_json()),
            equal,
            witness_term_on_failure: witness,
        }
    }

    /// Compares two skein elements.
    pub fn skein(check: &str, inputs: Value, lhs: &SkeinElement, rhs: &SkeinElement) -> Self {
        let equal = lhs == rhs;
        let witness = if equal {
            None
        } else {
            skein_engine::annulus::witness(lhs, rhs).map(|(m, c)| json!({"basis": m.to_string(), "difference": c}))
        };
        Report {
            check: check.into(),
            inputs,
            lhs: json!(lhs.to_string()),
            rhs: json!(rhs.to_string()),
            equal,
            witness_term_on_failure: witness,
        }
    }

    /// A check whose outcome is a boolean with a free-form explanation.
    pub fn predicate(check: &str, inputs: Value, lhs: Value, rhs: Value, equal: bool, witness: Option<Value>) -> Self {
        Report { check: check.into(), inputs, lhs, rhs, equal, witness_term_on_failure: witness }
    }

    /// A case that could not be evaluated.
    pub fn error(check: &str, inputs: Value, err: impl std::fmt::Display) -> Self {
        Report {
            check: check.into(),
            inputs,
            lhs: Value::Null,
            rhs: Value::Null,
            equal: false,
            witness_term_on_failure: Some(json!({"error": err.to_string()})),
        }
    }
}

/// The first exponent, in lattice order, where the coefficients differ.
pub fn torus_witness(lhs: &TorusElement, rhs: &TorusElement) -> Option<Value> {
    let mut keys: Vec<&Vec<i64>> = lhs.terms().map(|(k, _)| k).chain(rhs.terms().map(|(k, _)| k)).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter().find(|k| lhs.coeff(k) != rhs.coeff(k)).map(|k| {
        json!({"coords": k, "lhs": lhs.coeff(k), "rhs": rhs.coeff(k)})
    })
}

/// Summary of a verification suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    pub failures: Vec<Report>,
    pub notes: Vec<String>,
}

impl SuiteSummary {
    pub fn new(suite: &str, seed: u64, reports: Vec<Report>) -> Self {
        let cases = reports.len();
        let failures: Vec<Report> = reports.into_iter().filter(|r| !r.equal).collect();
        SuiteSummary { suite: suite.into(), seed, cases, passed: cases - failures.len(), failures, notes: vec![] }
    }

    pub fn all_passed(&self) -> bool {
        self.failures.is_empty() && self.cases > 0
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}
