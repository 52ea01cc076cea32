//! Structured pass/fail reports for axiom batteries.
//!
//! A report distinguishes "this well-formed object fails axiom X at basis
//! tuple (i,j,k)" from input-shape errors, which surface as `Err` before any
//! report exists. Witnesses carry the basis-tuple indices where the two sides
//! of a defining identity first disagreed.

use std::fmt;

/// A failing location: the basis tuple on which an identity broke.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub indices: Vec<usize>,
}

impl Witness {
    pub fn at(indices: Vec<usize>) -> Witness {
        Witness { indices }
    }
}

#[derive(Debug, Clone)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, Default)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn new() -> AxiomReport {
        AxiomReport { checks: Vec::new() }
    }

    pub fn record(&mut self, name: &str, witness: Option<Witness>) {
        self.checks.push(AxiomCheck {
            name: name.to_string(),
            passed: witness.is_none(),
            witness,
        });
    }

    pub fn record_pass(&mut self, name: &str) {
        self.record(name, None);
    }

    pub fn record_fail(&mut self, name: &str, indices: Vec<usize>) {
        self.record(name, Some(Witness { indices }));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// One-line synopsis: "ok" or the failing axiom names.
    pub fn summary(&self) -> String {
        if self.passed() {
            "ok".to_string()
        } else {
            let names: Vec<&str> = self.failures().map(|c| c.name.as_str()).collect();
            format!("failed [{}]", names.join(", "))
        }
    }

    /// Merge another report under a name prefix.
    pub fn absorb(&mut self, prefix: &str, other: AxiomReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}.{}", c.name);
            self.checks.push(c);
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            match &c.witness {
                Some(w) => writeln!(f, "  {:<28} {} at {:?}", c.name, status, w.indices)?,
                None => writeln!(f, "  {:<28} {}", c.name, status)?,
            }
        }
        Ok(())
    }
}
