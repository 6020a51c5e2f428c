//! Result bookkeeping for the exact cross-checks.

use std::fmt;

use crate::series::BiSeries;

/// Outcome of one named verification check: how many exact comparisons ran
/// and a description of each failure (normally empty).
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub comparisons: usize,
    pub failures: Vec<String>,
}

impl CheckResult {
    pub fn new(name: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            comparisons: 0,
            failures: Vec::new(),
        }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn record(&mut self, passed: bool, detail: impl FnOnce() -> String) {
        self.comparisons += 1;
        if !passed {
            self.failures.push(detail());
        }
    }

    /// Compare two series coefficient-for-coefficient on the shared retained
    /// rectangle capped at `(max_z, max_t)`; a mismatch reports the offending
    /// `(n, k)` pair and both sides.
    pub fn compare_series(
        &mut self,
        label: &str,
        lhs: &BiSeries,
        rhs: &BiSeries,
        max_z: usize,
        max_t: usize,
    ) {
        self.comparisons += 1;
        if let Some((i, j, l, r)) = lhs.first_difference(rhs, max_z, max_t) {
            self.failures.push(format!(
                "{label}: coefficient of z^{i} t^{j}: lhs = {l}, rhs = {r}"
            ));
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            write!(f, "ok   {} ({} comparisons)", self.name, self.comparisons)
        } else {
            write!(
                f,
                "FAIL {} ({} of {} comparisons failed): {}",
                self.name,
                self.failures.len(),
                self.comparisons,
                self.failures[0]
            )
        }
    }
}
