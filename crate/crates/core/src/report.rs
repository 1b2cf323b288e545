//! Verdict records emitted by every checker.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

/// A counterexample: the inputs and the two sides that disagreed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRecord {
    pub axiom: String,
    pub status: Status,
    /// Number of instances evaluated.
    pub instances: u64,
    pub witness: Option<Witness>,
    /// Seed of the random instances, if any were drawn.
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub records: Vec<CheckRecord>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn push(&mut self, r: CheckRecord) {
        self.records.push(r);
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.records.extend(other.records);
    }

    /// Append `other` with every axiom id prefixed by `prefix.`.
    pub fn extend_prefixed(&mut self, prefix: &str, other: CheckReport) {
        for mut r in other.records {
            r.axiom = alloc::format!("{prefix}.{}", r.axiom);
            self.records.push(r);
        }
    }

    pub fn get(&self, axiom: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.axiom == axiom)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.records {
            write!(f, "{:<5} {} ({} instances)", r.status.as_str(), r.axiom, r.instances)?;
            if let Some(s) = r.seed {
                write!(f, " seed={s}")?;
            }
            writeln!(f)?;
            if let Some(w) = &r.witness {
                writeln!(f, "      inputs: {}", w.inputs.join(", "))?;
                writeln!(f, "      lhs:    {}", w.lhs)?;
                writeln!(f, "      rhs:    {}", w.rhs)?;
            }
        }
        Ok(())
    }
}

/// Accumulates instances of one axiom, keeping the first counterexample.
pub(crate) struct Tally {
    axiom: String,
    instances: u64,
    witness: Option<Witness>,
}

impl Tally {
    pub fn new(axiom: &str) -> Self {
        Tally { axiom: axiom.to_string(), instances: 0, witness: None }
    }

    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.instances += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub fn finish(self, seed: Option<u64>) -> CheckRecord {
        CheckRecord {
            axiom: self.axiom,
            status: if self.witness.is_some() { Status::Fail } else { Status::Pass },
            instances: self.instances,
            witness: self.witness,
            seed,
        }
    }
}
