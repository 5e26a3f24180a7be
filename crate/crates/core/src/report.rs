//! Pass/fail records shared by the property checks.

use serde::Serialize;

use crate::scalar::{Extended, Scalar};

/// One checked inequality `lhs ≤ rhs` (or the property's own relation),
/// with both sides as exact `num/den` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub property: String,
    pub pass: bool,
    pub witness: Option<String>,
    pub lhs: String,
    pub rhs: String,
}

impl PropertyReport {
    pub fn new(property: &str, pass: bool, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        PropertyReport {
            property: property.to_string(),
            pass,
            witness: None,
            lhs: lhs.into(),
            rhs: rhs.into(),
        }
    }

    pub fn with_witness(mut self, witness: Option<String>) -> Self {
        self.witness = witness;
        self
    }

    pub fn compare<S: Scalar>(property: &str, lhs: &S, rhs: &S) -> Self {
        PropertyReport::new(property, lhs <= rhs, lhs.to_ratio_string(), rhs.to_ratio_string())
    }

    pub fn compare_extended<S: Scalar>(property: &str, lhs: &Extended<S>, rhs: &Extended<S>) -> Self {
        let pass = match (lhs, rhs) {
            (_, Extended::Infinite) => true,
            (Extended::Infinite, Extended::Finite(_)) => false,
            (Extended::Finite(a), Extended::Finite(b)) => a <= b,
        };
        PropertyReport::new(property, pass, lhs.to_ratio_string(), rhs.to_ratio_string())
    }
}

/// Integer-valued sides are written `k/1` like every other rational.
pub fn count_string(value: u64) -> String {
    format!("{value}/1")
}

pub fn all_pass(reports: &[PropertyReport]) -> bool {
    reports.iter().all(|r| r.pass)
}
