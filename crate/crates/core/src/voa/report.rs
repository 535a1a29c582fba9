use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::formal::{FracExp, VarId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }
}

/// First disagreeing coefficient found by a checker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub at: Vec<(VarId, FracExp)>,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, e)) in self.at.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}^{e}")?;
        }
        write!(f, ": lhs = {}, rhs = {}", self.lhs, self.rhs)
    }
}

/// Outcome of one windowed identity check. A failing report always carries
/// a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub identity: String,
    pub params: Vec<(String, String)>,
    pub status: Status,
    pub k: Option<i64>,
    pub witness: Option<Witness>,
    pub ms: u64,
    /// Informational reports never fail a run.
    pub informational: bool,
}

impl CheckReport {
    pub fn new(identity: &str) -> Self {
        CheckReport {
            identity: identity.into(),
            params: Vec::new(),
            status: Status::Pass,
            k: None,
            witness: None,
            ms: 0,
            informational: false,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.push((key.into(), value.to_string()));
        self
    }

    pub fn pass(mut self, k: Option<i64>) -> Self {
        self.status = Status::Pass;
        self.k = k;
        self.witness = None;
        self
    }

    pub fn fail(mut self, witness: Witness) -> Self {
        self.status = Status::Fail;
        self.witness = Some(witness);
        self
    }

    pub fn inconclusive(mut self, reason: &str) -> Self {
        self.status = Status::Inconclusive;
        self.params.push(("reason".into(), reason.into()));
        self
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Failing and not informational.
    pub fn is_failure(&self) -> bool {
        self.status == Status::Fail && !self.informational
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.params.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.identity, self.status.name())?;
        if self.informational {
            f.write_str(" (informational)")?;
        }
        for (k, v) in self.params.iter() {
            write!(f, " {k}={v}")?;
        }
        if let Some(k) = self.k {
            write!(f, " k={k}")?;
        }
        if let Some(w) = &self.witness {
            write!(f, " witness {w}")?;
        }
        Ok(())
    }
}
