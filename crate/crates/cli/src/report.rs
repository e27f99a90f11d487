//! Machine-readable report. Field order is fixed so identical inputs give
//! byte-identical output.

use pnkit::structures::{CheckReport, Status};
use pnkit::MultiVector;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct ResidualDoc {
    pub slot: String,
    pub expr: String,
}

#[derive(Debug, Serialize)]
pub struct ConditionDoc {
    pub name: String,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub residuals: Vec<ResidualDoc>,
}

#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub version: &'static str,
    pub title: String,
    pub conventions: Vec<String>,
    pub verdict: &'static str,
    pub conditions: Vec<ConditionDoc>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub bivectors: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl ReportDocument {
    pub fn new(r: &CheckReport, bivectors: &[MultiVector], timing_ms: Option<u64>) -> Self {
        let conditions = r
            .conditions
            .iter()
            .map(|c| {
                let (status, reason) = match &c.status {
                    Status::Pass => ("pass", None),
                    Status::Fail => ("fail", None),
                    Status::Skipped(why) => ("skipped", Some(why.clone())),
                };
                ConditionDoc {
                    name: c.name.clone(),
                    status,
                    reason,
                    residuals: c.residuals.iter().map(|r| ResidualDoc { slot: r.slot.clone(), expr: r.expr.clone() }).collect(),
                }
            })
            .collect();
        ReportDocument {
            version: env!("CARGO_PKG_VERSION"),
            title: r.title.clone(),
            conventions: r.conventions.clone(),
            verdict: r.verdict(),
            conditions,
            bivectors: bivectors.iter().map(|b| b.to_string()).collect(),
            seed: r.seed,
            timing_ms,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
