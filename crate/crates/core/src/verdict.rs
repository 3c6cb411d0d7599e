//! Named pass/fail results for checked identities and inequalities.

use serde::{Deserialize, Serialize};

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// How far a checked inequality `lhs ≤ rhs` is from failing (`rhs - lhs`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Margin {
    Exact(Rational),
    Float { value: f64, tolerance: f64 },
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub statement: String,
    pub status: Status,
    pub margin: Margin,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Verdict {
    /// Exact check of `lhs ≤ rhs`.
    pub fn exact_le(name: &str, statement: &str, lhs: &Rational, rhs: &Rational) -> Self {
        let margin = rhs - lhs;
        Verdict {
            name: name.into(),
            statement: statement.into(),
            status: if margin.is_negative() {
                Status::Fail
            } else {
                Status::Pass
            },
            margin: Margin::Exact(margin),
            note: None,
        }
    }

    /// Exact check of `lhs == rhs`; the margin records `rhs - lhs`.
    pub fn exact_eq(name: &str, statement: &str, lhs: &Rational, rhs: &Rational) -> Self {
        let margin = rhs - lhs;
        Verdict {
            name: name.into(),
            statement: statement.into(),
            status: if margin.is_zero() {
                Status::Pass
            } else {
                Status::Fail
            },
            margin: Margin::Exact(margin),
            note: None,
        }
    }

    /// Floating check of `lhs ≤ rhs` allowing `rel_tol · scale` of slack.
    pub fn float_le(name: &str, statement: &str, lhs: f64, rhs: f64, rel_tol: f64) -> Self {
        let scale = lhs.abs().max(rhs.abs()).max(1.0);
        let tolerance = rel_tol * scale;
        let value = rhs - lhs;
        Verdict {
            name: name.into(),
            statement: statement.into(),
            status: if value >= -tolerance {
                Status::Pass
            } else {
                Status::Fail
            },
            margin: Margin::Float { value, tolerance },
            note: None,
        }
    }

    /// Floating check of `|lhs - rhs| ≤ rel_tol · scale`.
    pub fn float_eq(name: &str, statement: &str, lhs: f64, rhs: f64, rel_tol: f64) -> Self {
        let scale = lhs.abs().max(rhs.abs()).max(1.0);
        let tolerance = rel_tol * scale;
        let value = rhs - lhs;
        Verdict {
            name: name.into(),
            statement: statement.into(),
            status: if value.abs() <= tolerance {
                Status::Pass
            } else {
                Status::Fail
            },
            margin: Margin::Float { value, tolerance },
            note: None,
        }
    }

    pub fn skipped(name: &str, statement: &str, note: impl Into<String>) -> Self {
        Verdict {
            name: name.into(),
            statement: statement.into(),
            status: Status::Skipped,
            margin: Margin::None,
            note: Some(note.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}
