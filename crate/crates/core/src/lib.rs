//! Extraction of strongly C8-connected bipartite subgraphs from dense graphs,
//! with exact verification.
//!
//! The pipeline in [`extract`] peels a graph to a minimum degree, splits it
//! into a bipartite graph, and prunes around a well-chosen pivot. The
//! [`connect`] module checks the result: exhaustively, through a sufficient
//! certificate, or by building explicit short cycles.

pub mod connect;
pub mod edgelist;
pub mod extract;
pub mod gen;
pub mod graph;
pub mod rational;

use serde::Serialize;

pub use connect::{
    build_witness, check_certificate, count_paths_len3, cycle_through_edges, validate_witness,
    verify_path3_bound, verify_strong_c8, verify_strongly_connected, CertificateReport,
    CertificateThresholds, ConnectError, ConnectivityReport, CycleWitness, EdgePair, PairRelation,
    PairSelection, VerifyOptions,
};
pub use edgelist::{parse_edge_list, read_edge_list, write_edge_list, EdgeListError};
pub use extract::{
    audit_trace, extract, replay_trace, ExtractConfig, ExtractError, Extraction, PipelineTrace,
    PivotStrategy, StageAuditReport, ThresholdMode, ThresholdSet,
};
pub use graph::{BipartiteGraph, Graph, GraphError, Side, VertexId, VertexSet};
pub use rational::Rational;

/// Pretty JSON with object keys sorted, so equal values give equal bytes.
pub fn canonical_json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let v = serde_json::to_value(value)?;
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}
