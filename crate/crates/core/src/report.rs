//! Check records shared by every verification routine.

use serde::{Deserialize, Serialize};

/// How a check's value is compared to its tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Relation {
    /// Residual-type: passes when `value <= tolerance`.
    #[default]
    AtMost,
    /// Negative controls and growth witnesses: passes when `value >= tolerance`.
    AtLeast,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub name: String,
    #[serde(with = "nullable_f64")]
    pub value: f64,
    #[serde(with = "nullable_f64")]
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip)]
    pub relation: Relation,
}

impl Check {
    pub fn at_most(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            value,
            tolerance,
            pass: value.is_finite() && value <= tolerance,
            relation: Relation::AtMost,
        }
    }

    pub fn at_least(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            value,
            tolerance,
            // an infinite blow-up still witnesses failure of the alternative
            pass: !value.is_nan() && value >= tolerance,
            relation: Relation::AtLeast,
        }
    }
}

/// JSON has no NaN or infinity: those are written as `null` and read back as NaN.
mod nullable_f64 {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
    }
}

/// Ordered list of checks produced by one verification routine.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerificationRecord {
    pub checks: Vec<Check>,
}

impl VerificationRecord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn at_most(&mut self, name: impl Into<String>, value: f64, tolerance: f64) {
        self.checks.push(Check::at_most(name, value, tolerance));
    }

    pub fn at_least(&mut self, name: impl Into<String>, value: f64, tolerance: f64) {
        self.checks.push(Check::at_least(name, value, tolerance));
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerificationRecord) {
        self.checks.extend(other.checks);
    }

    /// Appends `other`'s checks with `prefix.` prepended to each name.
    pub fn extend_prefixed(&mut self, prefix: &str, other: VerificationRecord) {
        for mut c in other.checks {
            c.name = format!("{prefix}.{}", c.name);
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

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}
