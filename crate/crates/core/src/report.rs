//! The JSON analysis report.

use std::time::Instant;

use serde::Serialize;

use crate::families::FamilySpec;
use crate::field::Elem;
use crate::map::MapTable;
use crate::error::Result;
use crate::spectra::{DifferentialSummary, PreimageSummary};
use crate::theorems::{run_suite, Context, RunOptions, TheoremReport};
use crate::walsh::WalshSummary;

pub const SCHEMA_VERSION: u32 = 1;

/// Where the analysed table came from.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    Family {
        spec: FamilySpec,
        #[serde(skip_serializing_if = "Option::is_none")]
        basis: Option<(Elem, Elem)>,
        #[serde(skip_serializing_if = "Vec::is_empty")]
        warnings: Vec<String>,
    },
    Expression { expr: String },
    Lut { path: String, digest: String },
    Table,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timing {
    pub profiles_ms: f64,
    pub theorems_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub field: String,
    pub provenance: Provenance,
    pub digest: String,
    pub preimage: PreimageSummary,
    pub differential: DifferentialSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub walsh: Option<WalshSummary>,
    pub theorems: Vec<TheoremReport>,
    pub timing: Timing,
}

impl AnalysisReport {
    pub fn conclusion_failures(&self) -> Vec<&TheoremReport> {
        self.theorems.iter().filter(|t| t.failed()).collect()
    }

    /// The report as a JSON value without the timing block.
    pub fn comparable(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("serializable");
        v.as_object_mut().expect("object").remove("timing");
        v
    }
}

pub fn analyze(f: &MapTable, provenance: Provenance, opts: &RunOptions, suite: &str) -> Result<AnalysisReport> {
    let start = Instant::now();
    let ctx = Context::new(f, opts)?;
    let profiles_ms = start.elapsed().as_secs_f64() * 1e3;
    let start = Instant::now();
    let theorems = run_suite(&ctx, suite);
    let theorems_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        field: f.field().to_string(),
        provenance,
        digest: f.digest(),
        preimage: ctx.pp.summary(),
        differential: ctx.dp.summary(),
        walsh: ctx.wp.as_ref().map(|w| w.summary()),
        theorems,
        timing: Timing { profiles_ms, theorems_ms },
    })
}
