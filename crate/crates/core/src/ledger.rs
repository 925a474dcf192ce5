//! Named pass/fail verdicts with failure witnesses.

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// Where an identity failed: the basis multi-index that exposed it (the
/// tuple of basis elements fed in, followed by the output coordinate) and
/// the two evaluated sides at that coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub index: Vec<usize>,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

impl Witness {
    pub fn new(index: Vec<usize>, lhs: Scalar, rhs: Scalar) -> Self {
        Self { index, lhs, rhs }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ledger {
    pub checks: Vec<Check>,
}

impl Ledger {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a check; `failure` is `None` when the identity held.
    pub fn record(&mut self, name: impl Into<String>, failure: Option<Witness>) -> bool {
        let pass = failure.is_none();
        self.checks.push(Check { name: name.into(), pass, witness: failure, note: None });
        pass
    }

    pub fn record_flag(&mut self, name: impl Into<String>, pass: bool) -> bool {
        self.checks.push(Check { name: name.into(), pass, witness: None, note: None });
        pass
    }

    pub fn record_note(&mut self, name: impl Into<String>, pass: bool, note: impl Into<String>) -> bool {
        self.checks.push(Check { name: name.into(), pass, witness: None, note: Some(note.into()) });
        pass
    }

    pub fn extend_prefixed(&mut self, prefix: &str, other: Ledger) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self, name: &str) -> Option<bool> {
        self.get(name).map(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn strip_witnesses(&mut self) {
        for c in &mut self.checks {
            c.witness = None;
        }
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

/// First coordinate where two equal-length slices differ.
pub fn first_diff(prefix: &[usize], lhs: &[Scalar], rhs: &[Scalar]) -> Option<Witness> {
    debug_assert_eq!(lhs.len(), rhs.len());
    lhs.iter().zip(rhs).enumerate().find(|(_, (a, b))| a != b).map(|(k, (a, b))| {
        let mut index = prefix.to_vec();
        index.push(k);
        Witness::new(index, a.clone(), b.clone())
    })
}
