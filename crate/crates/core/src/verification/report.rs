//! Verification reports: a versioned JSON document and a flat CSV table.

use std::io::Write;

use serde::Serialize;

use super::{CheckOptions, InequalityCheck};
use crate::error::Result;

pub const SCHEMA: u32 = 1;

/// What was run, echoed into the report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyConfig {
    /// `"default"` or the data file the roster came from
    pub roster: String,
    pub functions: Vec<serde_json::Value>,
    pub alphas: Vec<f64>,
    pub options: CheckOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub checks: usize,
    pub failed: usize,
    pub estimate_only: usize,
    pub pass: bool,
}

/// Wall-clock timings are deliberately absent so that identical runs
/// produce identical bytes; they are logged instead.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub version: String,
    pub config: VerifyConfig,
    pub summary: Summary,
    pub checks: Vec<InequalityCheck>,
}

impl VerificationReport {
    pub fn new(config: VerifyConfig, checks: Vec<InequalityCheck>) -> Self {
        let failed = checks.iter().filter(|c| !c.pass).count();
        let summary = Summary {
            checks: checks.len(),
            failed,
            estimate_only: checks.iter().filter(|c| c.estimate_only).count(),
            pass: failed == 0 && !checks.is_empty(),
        };
        Self { schema: SCHEMA, version: crate::VERSION.to_string(), config, summary, checks }
    }

    pub fn pass(&self) -> bool {
        self.summary.pass
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// One row per check; reals with 17 significant digits.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["name", "n", "alpha", "family", "hypothesis_constant", "bound_constant", "worst_ratio", "samples", "pass"])?;
        for c in &self.checks {
            out.write_record([
                c.name.clone(),
                c.n.to_string(),
                c.alpha.map(real).unwrap_or_default(),
                c.family.clone(),
                real(c.hypothesis_constant),
                real(c.bound_constant),
                real(c.worst_ratio),
                c.samples.to_string(),
                c.pass.to_string(),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

/// `x` with 17 significant digits.
pub fn real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}
