//! Cycle-connectivity: an exhaustive bounded cycle oracle, the strong
//! C8-connectivity verifier built on it, the sufficient certificate for
//! bipartite outputs, the constructive witness builder, and counts of
//! paths of length three.

mod certificate;
mod cycle;
mod paths;
mod verify;
mod witness;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{BipartiteGraph, Graph, GraphError, Side, VertexId};

pub use certificate::{check_certificate, CertificateReport, CertificateThresholds};
pub use cycle::{cycle_through_edges, CycleSearcher};
pub use paths::{count_paths_len3, verify_path3_bound, Path3Report, Path3Violation};
pub use verify::{
    verify_strong_c8, verify_strongly_connected, ConnectivityReport, PairSelection, VerifyOptions,
};
pub use witness::build_witness;

pub type Edge = (VertexId, VertexId);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConnectError {
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(VertexId, VertexId),
    #[error("the two edges of a pair must differ")]
    SameEdge,
    #[error("cycle length bound must be at least 3, got {0}")]
    MaxLenTooSmall(usize),
    #[error("no candidate left when choosing {step}; the certificate should have excluded this")]
    SelectionExhausted { step: &'static str },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairRelation {
    Disjoint,
    /// Bipartite: common A-endpoint. General graphs: common first endpoint.
    ShareA,
    /// Bipartite: common B-endpoint.
    ShareB,
}

/// Two distinct edges. In bipartite targets each edge is `(A-end, B-end)`;
/// in general graphs a shared vertex is written first in both edges and
/// disjoint edges are written `(min, max)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgePair {
    pub e: Edge,
    pub f: Edge,
    pub relation: PairRelation,
}

fn sorted(e: Edge) -> Edge {
    (e.0.min(e.1), e.0.max(e.1))
}

impl EdgePair {
    /// Normalized pair for a general graph. Does not check edge membership.
    pub fn new(e: Edge, f: Edge) -> Result<Self, ConnectError> {
        let (e, f) = (sorted(e), sorted(f));
        if e == f {
            return Err(ConnectError::SameEdge);
        }
        let shared = [e.0, e.1].into_iter().find(|&v| v == f.0 || v == f.1);
        Ok(match shared {
            None => EdgePair {
                e,
                f,
                relation: PairRelation::Disjoint,
            },
            Some(s) => {
                let other = |x: Edge| if x.0 == s { x.1 } else { x.0 };
                EdgePair {
                    e: (s, other(e)),
                    f: (s, other(f)),
                    relation: PairRelation::ShareA,
                }
            }
        })
    }

    /// Pair of edges of `gp`, each oriented `(A, B)`.
    pub fn oriented(gp: &BipartiteGraph, e: Edge, f: Edge) -> Result<Self, ConnectError> {
        let orient = |x: Edge| -> Result<Edge, ConnectError> {
            if !gp.graph().has_edge(x.0, x.1) {
                return Err(ConnectError::NotAnEdge(x.0, x.1));
            }
            Ok(if gp.side_of(x.0) == Some(Side::A) {
                x
            } else {
                (x.1, x.0)
            })
        };
        let (e, f) = (orient(e)?, orient(f)?);
        let relation = if e == f {
            return Err(ConnectError::SameEdge);
        } else if e.0 == f.0 {
            PairRelation::ShareA
        } else if e.1 == f.1 {
            PairRelation::ShareB
        } else {
            PairRelation::Disjoint
        };
        Ok(EdgePair { e, f, relation })
    }

    pub fn shares_vertex(&self) -> bool {
        self.relation != PairRelation::Disjoint
    }
}

/// A simple cycle through both edges of `pair`. `cycle` lists each vertex
/// once; the closing edge runs from the last vertex back to the first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleWitness {
    pub pair: EdgePair,
    pub cycle: Vec<VertexId>,
    pub length: usize,
}

impl CycleWitness {
    pub fn new(pair: EdgePair, cycle: Vec<VertexId>) -> Self {
        let length = cycle.len();
        CycleWitness {
            pair,
            cycle,
            length,
        }
    }

    fn has_cyclic_edge(&self, (u, v): Edge) -> bool {
        let k = self.cycle.len();
        (0..k).any(|i| {
            let (x, y) = (self.cycle[i], self.cycle[(i + 1) % k]);
            (x == u && y == v) || (x == v && y == u)
        })
    }

    /// Length bound for this witness's relation under `max_cycle`.
    pub fn allowed_length(&self, max_cycle: usize) -> usize {
        if self.pair.shares_vertex() {
            max_cycle.saturating_sub(2)
        } else {
            max_cycle
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessDefect {
    #[error("recorded length {recorded} differs from {actual} listed vertices")]
    LengthMismatch { recorded: usize, actual: usize },
    #[error("a cycle needs at least 3 vertices, got {0}")]
    TooShort(usize),
    #[error("length {length} exceeds the bound {bound}")]
    TooLong { length: usize, bound: usize },
    #[error("vertex {0} repeats")]
    Repeated(VertexId),
    #[error("consecutive vertices {0} and {1} are not adjacent")]
    MissingEdge(VertexId, VertexId),
    #[error("edge ({0}, {1}) of the pair is not on the cycle")]
    PairEdgeAbsent(VertexId, VertexId),
}

/// Structural check of a witness against `g`, independent of how it was built.
/// Disjoint pairs may use up to `max_cycle` edges, vertex-sharing pairs two fewer.
pub fn validate_witness(
    g: &Graph,
    w: &CycleWitness,
    max_cycle: usize,
) -> Result<(), WitnessDefect> {
    let k = w.cycle.len();
    if w.length != k {
        return Err(WitnessDefect::LengthMismatch {
            recorded: w.length,
            actual: k,
        });
    }
    if k < 3 {
        return Err(WitnessDefect::TooShort(k));
    }
    let bound = w.allowed_length(max_cycle);
    if k > bound {
        return Err(WitnessDefect::TooLong { length: k, bound });
    }
    let mut seen = w.cycle.clone();
    seen.sort_unstable();
    if let Some(d) = seen.windows(2).find(|p| p[0] == p[1]) {
        return Err(WitnessDefect::Repeated(d[0]));
    }
    for i in 0..k {
        let (x, y) = (w.cycle[i], w.cycle[(i + 1) % k]);
        if !g.has_edge(x, y) {
            return Err(WitnessDefect::MissingEdge(x, y));
        }
    }
    for e in [w.pair.e, w.pair.f] {
        if !w.has_cyclic_edge(e) {
            return Err(WitnessDefect::PairEdgeAbsent(e.0, e.1));
        }
    }
    Ok(())
}
