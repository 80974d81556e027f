//! Outcome of checking one identity on one space.

use std::fmt;

use crate::class::{normal_form, DivisorClass};
use crate::morphisms::PairClass;
use crate::space::ModuliSpace;

/// `lhs - rhs` of a checked identity, in Mumford normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Difference {
    Single(DivisorClass),
    Pair(PairClass),
}

impl Difference {
    pub fn of(lhs: &DivisorClass, rhs: &DivisorClass) -> Difference {
        let d = lhs.checked_sub(rhs).expect("both sides on one space");
        Difference::Single(normal_form(&d))
    }

    pub fn of_pairs(lhs: &PairClass, rhs: &PairClass) -> Difference {
        let d = lhs.checked_sub(rhs).expect("both sides on one product");
        Difference::Pair(d.normal_form())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Difference::Single(c) => c.is_zero(),
            Difference::Pair(p) => p.is_zero(),
        }
    }
}

impl fmt::Display for Difference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Difference::Single(c) => c.fmt(f),
            Difference::Pair(p) => p.fmt(f),
        }
    }
}

/// A named side condition of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub identity: &'static str,
    /// stratum, subset, tau or map, when the identity takes one
    pub parameter: Option<String>,
    pub space: ModuliSpace,
    pub passed: bool,
    pub difference: Difference,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    /// `passed` is set from the difference and the checks.
    pub fn new(
        identity: &'static str,
        parameter: Option<String>,
        space: &ModuliSpace,
        difference: Difference,
        checks: Vec<Check>,
    ) -> VerificationReport {
        let passed = difference.is_zero() && checks.iter().all(|c| c.passed);
        VerificationReport {
            identity,
            parameter,
            space: space.clone(),
            passed,
            difference,
            checks,
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {} on {}", self.identity, self.space)?;
        if let Some(p) = &self.parameter {
            write!(f, " [{p}]")?;
        }
        if !self.difference.is_zero() {
            write!(f, "\n  difference: {}", self.difference)?;
        }
        for c in self.checks.iter().filter(|c| !c.passed) {
            write!(f, "\n  failed check: {}", c.name)?;
        }
        Ok(())
    }
}

pub(crate) fn check(name: impl Into<String>, passed: bool) -> Check {
    Check {
        name: name.into(),
        passed,
    }
}
