//! Pass/fail reports for verification suites.

use crate::exact::LinMap;
use serde::Serialize;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Check {
    pub id: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, id: impl Into<String>, pass: bool, witness: Option<String>) {
        self.checks.push(Check { id: id.into(), pass, witness });
    }

    pub fn ok(&mut self, id: impl Into<String>) {
        self.push(id, true, None);
    }

    pub fn fail(&mut self, id: impl Into<String>, witness: impl Into<String>) {
        self.push(id, false, Some(witness.into()));
    }

    /// Records whether two maps agree; on failure the witness names the first
    /// differing column (input basis index) through `decode`.
    pub fn map_eq(&mut self, id: impl Into<String>, lhs: &LinMap, rhs: &LinMap, decode: &dyn Fn(usize) -> String) -> bool {
        let id = id.into();
        if (lhs.rows, lhs.cols) != (rhs.rows, rhs.cols) {
            self.fail(id, format!("shape {}x{} vs {}x{}", lhs.rows, lhs.cols, rhs.rows, rhs.cols));
            return false;
        }
        match lhs.first_difference(rhs) {
            None => {
                self.ok(id);
                true
            }
            Some((row, col)) => {
                self.fail(id, format!("input {} (output coordinate {})", decode(col), row));
                false
            }
        }
    }

    pub fn merge(&mut self, prefix: &str, other: Report) {
        for c in other.checks {
            self.checks.push(Check { id: format!("{}{}", prefix, c.id), ..c });
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            match &c.witness {
                Some(w) => writeln!(f, "{} {} ({})", if c.pass { "pass" } else { "FAIL" }, c.id, w)?,
                None => writeln!(f, "{} {}", if c.pass { "pass" } else { "FAIL" }, c.id)?,
            }
        }
        Ok(())
    }
}

/// Decoder for a flat index into a product of factor dimensions.
pub fn multi_index(dims: &[usize]) -> impl Fn(usize) -> String + '_ {
    move |mut j| {
        let mut parts = vec![0; dims.len()];
        for k in (0..dims.len()).rev() {
            parts[k] = j % dims[k].max(1);
            j /= dims[k].max(1);
        }
        format!("{:?}", parts)
    }
}
