//! The extraction pipeline: degree peeling, local-search bipartition,
//! auxiliary codegree graph, derandomized pivot choice, and two-sided
//! pruning down to the bipartite subgraph `G′`.

mod audit;
mod bipartition;
pub(crate) mod gamma;
mod peel;
mod pipeline;
mod pivot;
mod prune;
mod thresholds;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::Rational;

pub use audit::{
    audit_trace, BipartitionAudit, GPrimeAudit, PaperGPrimeChecks, PeelAudit, PivotAudit,
    PruningAudit, StageAuditReport,
};
pub use bipartition::{local_bipartition, local_bipartition_with_moves};
pub use gamma::build_gamma;
pub use peel::{peel_sequence, peel_to_min_degree};
pub use pipeline::{
    extract, replay_trace, Extraction, PipelineTrace, StageGraphs, StageTiming, TraceDocument,
};
pub use pivot::{count_bad_pairs, is_bad, select_pivot, BadPairIndex, PivotChoice};
pub use prune::{prune_sides, PruneOutcome};
pub use thresholds::{k_from_beta, KRounding, ThresholdMode, ThresholdSet, K_ROUNDING_BITS};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExtractError {
    #[error("input graph has no vertices")]
    EmptyGraph,
    #[error("no vertex survives peeling at minimum degree {t_peel}")]
    EmptyAfterPeel { t_peel: Rational },
    #[error("paper mode needs at least n^2/k = {required} edges, input has {edges}")]
    NotEnoughEdges { edges: usize, required: Rational },
    #[error("paper mode needs n > 2^20 k^5 = {bound}, got n = {n}")]
    PaperModePreconditionViolated { n: usize, bound: Rational },
    #[error("invalid thresholds: {0}")]
    InvalidThresholds(String),
    #[error("pivot side A is empty")]
    EmptySideA,
    #[error("trace was recorded without intermediate graphs")]
    IntermediatesNotRecorded,
    #[error("trace replay failed: {0}")]
    Replay(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PivotStrategy {
    /// Evaluate every A-vertex.
    Exhaustive,
    /// Evaluate `count` seeded uniform draws.
    Sampled { count: usize, seed: u64 },
}

impl PivotStrategy {
    /// Parses `exhaustive` or `sampled:N`; `seed` feeds the sampled variant.
    pub fn parse(s: &str, seed: u64) -> Result<Self, String> {
        match s.trim() {
            "exhaustive" => Ok(PivotStrategy::Exhaustive),
            other => {
                let count = other
                    .strip_prefix("sampled:")
                    .and_then(|c| c.parse::<usize>().ok())
                    .filter(|&c| c >= 1)
                    .ok_or_else(|| {
                        format!("expected `exhaustive` or `sampled:N` (N >= 1), got {other:?}")
                    })?;
                Ok(PivotStrategy::Sampled { count, seed })
            }
        }
    }
}

impl fmt::Display for PivotStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PivotStrategy::Exhaustive => f.write_str("exhaustive"),
            PivotStrategy::Sampled { count, .. } => write!(f, "sampled:{count}"),
        }
    }
}

impl FromStr for PivotStrategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        PivotStrategy::parse(s, 0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtractConfig {
    pub thresholds: ThresholdSet,
    pub pivot_strategy: PivotStrategy,
    /// Keep `G₁`, `H` and `Γ` in the trace (needed by [`audit_trace`]).
    pub record_trace: bool,
}

impl ExtractConfig {
    pub fn new(thresholds: ThresholdSet) -> Self {
        ExtractConfig {
            thresholds,
            pivot_strategy: PivotStrategy::Exhaustive,
            record_trace: true,
        }
    }
}
