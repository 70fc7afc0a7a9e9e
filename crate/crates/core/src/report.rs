//! Verification reports shared by every auditor.

use serde::Serialize;

/// One failed identity. `location` holds the basis indices involved (pair or
/// triple) so callers can localize a fault without parsing strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub lhs: String,
    pub rhs: String,
    pub residual: String,
    #[serde(skip)]
    pub location: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checked_count: usize,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new(checked_count: usize, violations: Vec<Violation>) -> Self {
        Self {
            checked_count,
            violations,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: Report) {
        self.checked_count += other.checked_count;
        self.violations.extend(other.violations);
    }

    /// Locations of all violations, in report order.
    pub fn locations(&self) -> Vec<&[usize]> {
        self.violations
            .iter()
            .map(|v| v.location.as_slice())
            .collect()
    }
}
