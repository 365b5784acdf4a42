//! Margin reports: one record per checked inequality.
//!
//! Every check is normalised to the form `lhs < rhs` (or `lhs <= rhs`), so
//! `margin = rhs - lhs` is positive exactly when the claim holds. Claims of
//! the form `a > b` are stored with `lhs = b`, `rhs = a`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::exponents::Variant;

/// Relative slack applied to every comparison.
pub const SLACK_REL: f64 = 1e-9;

/// Absolute slack for comparing `a` against `b`: `1e-9 * max(1, |a|, |b|)`.
pub fn slack(a: f64, b: f64) -> f64 {
    SLACK_REL * 1f64.max(a.abs()).max(b.abs())
}

/// `a < b` with the slack policy: passes only if `a + eps < b`.
pub fn strictly_less(a: f64, b: f64) -> bool {
    a + slack(a, b) < b
}

/// `a <= b`, tolerating rounding noise of size `eps` at equality.
pub fn less_or_equal(a: f64, b: f64) -> bool {
    a <= b + slack(a, b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Less,
    #[serde(rename = "<=")]
    LessEq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The inequality is evaluated but not claimed at this index.
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarginReport {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
    pub relation: Relation,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub status: Status,
    pub terms: BTreeMap<String, f64>,
    pub claim_ref: String,
}

impl MarginReport {
    fn new(check: &str, relation: Relation, lhs: f64, rhs: f64) -> Self {
        let ok = match relation {
            Relation::Less => strictly_less(lhs, rhs),
            Relation::LessEq => less_or_equal(lhs, rhs),
        };
        MarginReport {
            check: check.to_string(),
            k: None,
            x: None,
            variant: None,
            relation,
            lhs,
            rhs,
            margin: rhs - lhs,
            status: if ok { Status::Pass } else { Status::Fail },
            terms: BTreeMap::new(),
            claim_ref: String::new(),
        }
    }

    /// Report for the strict claim `lhs < rhs`.
    pub fn less(check: &str, lhs: f64, rhs: f64) -> Self {
        Self::new(check, Relation::Less, lhs, rhs)
    }

    /// Report for the claim `lhs <= rhs`.
    pub fn less_eq(check: &str, lhs: f64, rhs: f64) -> Self {
        Self::new(check, Relation::LessEq, lhs, rhs)
    }

    pub fn with_k(mut self, k: u64) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_x(mut self, x: f64) -> Self {
        self.x = Some(x);
        self
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = Some(variant);
        self
    }

    pub fn term(mut self, name: &str, value: f64) -> Self {
        self.terms.insert(name.to_string(), value);
        self
    }

    pub fn claim(mut self, text: &str) -> Self {
        self.claim_ref = text.to_string();
        self
    }

    /// Marks the report as evaluated but outside the claimed range.
    pub fn not_applicable_unless(mut self, claimed: bool) -> Self {
        if !claimed {
            self.status = Status::NotApplicable;
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

/// True when no report in the slice failed (not-applicable rows are ignored).
pub fn all_pass(reports: &[MarginReport]) -> bool {
    reports.iter().all(|r| !r.failed())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_check_needs_more_than_slack() {
        assert!(strictly_less(1.0, 1.0 + 1e-6));
        assert!(!strictly_less(1.0, 1.0 + 1e-10));
        assert!(!strictly_less(1.0, 1.0));
    }

    #[test]
    fn non_strict_accepts_equality() {
        assert!(less_or_equal(2.0, 2.0));
        assert!(less_or_equal(2.0 + 1e-12, 2.0));
        assert!(!less_or_equal(2.1, 2.0));
    }

    #[test]
    fn margin_is_rhs_minus_lhs() {
        let r = MarginReport::less("demo", 0.25, 1.0).with_k(3);
        assert_eq!(r.margin, 0.75);
        assert!(r.passed());
        let r = MarginReport::less("demo", 2.0, 1.0).not_applicable_unless(false);
        assert_eq!(r.status, Status::NotApplicable);
        assert!(!r.failed());
    }
}
