//! Validator reports.
//!
//! Every structural validator in this crate answers with a [`CheckReport`]
//! rather than a bare boolean: each violated identity is recorded together
//! with the basis tuple it was evaluated on and the exact residual vector.
//! A report with no violations is a pass.

use crate::exactlin::Scalar;
use serde::{Deserialize, Serialize};
use std::fmt;

/// One violated identity instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Stable label of the identity that failed (e.g. `"jacobi"`,
    /// `"reynolds"`, `"derivation"`, `"rd_commutation"`).
    pub identity: String,
    /// Basis indices (1-based) the identity was evaluated on.
    pub at: Vec<usize>,
    /// Exact residual, i.e. left-hand side minus right-hand side.
    pub residual: Vec<Scalar>,
}

impl Violation {
    pub fn new(identity: &str, at: Vec<usize>, residual: Vec<Scalar>) -> Self {
        Violation {
            identity: identity.to_string(),
            at,
            residual,
        }
    }
}

/// Outcome of a validator: the list of violated identities, possibly empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn pass() -> Self {
        CheckReport::default()
    }

    pub fn is_pass(&self) -> bool {
        self.violations.is_empty()
    }

    /// Records `residual` as a violation of `identity` unless it is zero.
    pub fn record(&mut self, identity: &str, at: Vec<usize>, residual: Vec<Scalar>) {
        if residual.iter().any(|s| !s.is_zero()) {
            self.violations.push(Violation::new(identity, at, residual));
        }
    }

    /// Merges another report into this one.
    pub fn absorb(&mut self, other: CheckReport) {
        self.violations.extend(other.violations);
    }

    /// The labels of all violated identities, deduplicated, in first-seen order.
    pub fn violated_identities(&self) -> Vec<&str> {
        let mut seen = Vec::new();
        for v in &self.violations {
            if !seen.contains(&v.identity.as_str()) {
                seen.push(v.identity.as_str());
            }
        }
        seen
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_pass() {
            return write!(f, "pass");
        }
        writeln!(f, "{} violation(s):", self.violations.len())?;
        for v in &self.violations {
            let residual: Vec<String> = v.residual.iter().map(|s| s.to_string()).collect();
            writeln!(
                f,
                "  {} at {:?}: residual [{}]",
                v.identity,
                v.at,
                residual.join(", ")
            )?;
        }
        Ok(())
    }
}
