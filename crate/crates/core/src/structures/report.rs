use std::fmt;

use crate::tensor::{Kind, Multi};
use crate::{Chart, Scalar};

/// Conventions every report carries, so results can be read without the
/// source at hand.
pub const CONVENTIONS: [&str; 6] = [
    "interior products contract the first slot; i_{a^b} = i_b i_a",
    "evaluation uses the determinant convention: (dx^dy)(d/dx, d/dy) = 1",
    "Schouten symmetry: [A,B] = -(-1)^{(deg A - 1)(deg B - 1)} [B,A]; [D,f] = (-1)^{k+1} i_{df} D",
    "pi# a = i_a pi; omega_flat X = i_X omega; pi# = (omega_flat)^-1",
    "phi = omega_flat Phi and Phi = pi# phi, applied slotwise",
    "endomorphism entry (i,j) is the d/dx_i coefficient of N(d/dx_j); N* has the transposed matrix",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

/// A nonzero witness: where it was found and its canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub slot: String,
    pub expr: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub name: String,
    pub status: Status,
    pub residuals: Vec<Residual>,
}

impl Condition {
    pub fn from_residuals(name: impl Into<String>, residuals: Vec<Residual>) -> Self {
        let status = if residuals.is_empty() { Status::Pass } else { Status::Fail };
        Condition { name: name.into(), status, residuals }
    }

    pub fn flag(name: impl Into<String>, ok: bool, detail: Option<String>) -> Self {
        let residuals = match (ok, detail) {
            (false, Some(d)) => vec![Residual { slot: "detail".into(), expr: d }],
            _ => Vec::new(),
        };
        Condition { name: name.into(), status: if ok { Status::Pass } else { Status::Fail }, residuals }
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Condition { name: name.into(), status: Status::Skipped(reason.into()), residuals: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub title: String,
    pub conditions: Vec<Condition>,
    pub conventions: Vec<String>,
    pub seed: Option<u64>,
}

impl CheckReport {
    pub fn new(title: impl Into<String>) -> Self {
        CheckReport {
            title: title.into(),
            conditions: Vec::new(),
            conventions: CONVENTIONS.iter().map(|s| s.to_string()).collect(),
            seed: None,
        }
    }

    pub fn push(&mut self, c: Condition) -> &Condition {
        self.conditions.push(c);
        self.conditions.last().unwrap()
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.conditions.extend(other.conditions);
    }

    /// Pass iff every condition that ran passed.
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| !c.failed())
    }

    pub fn condition(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }

    pub fn verdict(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.title, self.verdict())?;
        for c in &self.conditions {
            match &c.status {
                Status::Pass => writeln!(f, "  [pass] {}", c.name)?,
                Status::Fail => writeln!(f, "  [FAIL] {}", c.name)?,
                Status::Skipped(why) => writeln!(f, "  [skip] {} ({why})", c.name)?,
            }
            for r in &c.residuals {
                writeln!(f, "         {} = {}", r.slot, r.expr)?;
            }
        }
        Ok(())
    }
}

pub(crate) fn basis_name<K: Kind>(chart: &Chart, idx: impl Iterator<Item = usize>) -> String {
    let parts: Vec<String> = idx.map(|i| format!("{}{}", K::PREFIX, chart.coord_name(i))).collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("^")
    }
}

/// Pushes one residual per nonzero component of `t`.
pub(crate) fn collect<K: Kind>(out: &mut Vec<Residual>, slot: &str, t: &Multi<K>) {
    for (b, s) in t.iter() {
        out.push(Residual {
            slot: format!("{slot} [{}]", basis_name::<K>(t.chart(), b.indices())),
            expr: s.to_string_in(t.chart()),
        });
    }
}

pub(crate) fn collect_scalar(out: &mut Vec<Residual>, slot: String, s: &Scalar, chart: &Chart) {
    if !s.is_zero() {
        out.push(Residual { slot, expr: s.to_string_in(chart) });
    }
}
