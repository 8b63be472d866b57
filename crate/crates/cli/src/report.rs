use std::collections::BTreeMap;

use cycleweave_core::connect::{Path3Report, Path3Violation};
use cycleweave_core::extract::PivotStrategy;
use cycleweave_core::{
    BipartiteGraph, CertificateReport, CertificateThresholds, ConnectivityReport, StageAuditReport,
    ThresholdSet, VerifyOptions, VertexId,
};
use serde::Serialize;

pub const REPORT_FORMAT: &str = "cycleweave-report/1";

/// Violations listed in a report; the count is always complete.
const LISTED_VIOLATIONS: usize = 20;

#[derive(Debug, Serialize)]
pub struct InputSummary {
    pub path: String,
    pub vertices: usize,
    pub edges: usize,
    pub warnings: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct ConfigEcho {
    pub thresholds: ThresholdSet,
    pub certificate_thresholds: CertificateThresholds,
    pub pivot_strategy: PivotStrategy,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifyOptions>,
}

#[derive(Debug, Serialize)]
pub struct GPrimeSummary {
    pub a_size: usize,
    pub b_size: usize,
    pub edges: usize,
    pub side_a: Vec<VertexId>,
    pub side_b: Vec<VertexId>,
}

impl GPrimeSummary {
    pub fn of(gp: &BipartiteGraph) -> Self {
        GPrimeSummary {
            a_size: gp.side_a().len(),
            b_size: gp.side_b().len(),
            edges: gp.edge_count(),
            side_a: gp.side_a().as_slice().to_vec(),
            side_b: gp.side_b().as_slice().to_vec(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Path3Summary {
    pub holds: bool,
    pub pairs_checked: usize,
    pub min_count: Option<u64>,
    pub violation_count: usize,
    pub violations: Vec<Path3Violation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uniform_bound: Option<cycleweave_core::Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uniform_bound_ok: Option<bool>,
}

impl From<Path3Report> for Path3Summary {
    fn from(r: Path3Report) -> Self {
        Path3Summary {
            holds: r.holds,
            pairs_checked: r.pairs_checked,
            min_count: r.min_count,
            violation_count: r.violations.len(),
            violations: r.violations.into_iter().take(LISTED_VIOLATIONS).collect(),
            uniform_bound: r.uniform_bound,
            uniform_bound_ok: r.uniform_bound_ok,
        }
    }
}

/// Everything a run produced. Keys serialize sorted, so equal runs give
/// byte-identical files.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub format: &'static str,
    pub command: &'static str,
    pub input: InputSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<ConfigEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub audit: Option<StageAuditReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path3: Option<Path3Summary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub connectivity: Option<ConnectivityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_prime: Option<GPrimeSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
    pub exit_code: i32,
}

impl RunReport {
    pub fn new(command: &'static str, input: InputSummary) -> Self {
        RunReport {
            format: REPORT_FORMAT,
            command,
            input,
            config: None,
            audit: None,
            certificate: None,
            path3: None,
            connectivity: None,
            g_prime: None,
            timings_ms: None,
            exit_code: 0,
        }
    }
}
