use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::bipartition::local_bipartition_with_moves;
use super::gamma::build_gamma;
use super::peel::peel_to_min_degree;
use super::pivot::{count_bad_pairs, select_pivot};
use super::prune::prune_sides;
use super::{ExtractConfig, ExtractError, PivotStrategy, ThresholdMode, ThresholdSet};
use crate::graph::{BipartiteGraph, Graph, VertexId, VertexSet};
use crate::rational::Rational;

pub const TRACE_FORMAT: &str = "cycleweave-trace/1";

/// Intermediate graphs, in `G₁` ids (`gamma` in side-A positions).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageGraphs {
    pub g1: Graph,
    pub h: BipartiteGraph,
    pub gamma: Graph,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageTiming {
    pub stage: String,
    pub millis: f64,
}

/// Everything the pipeline produced, in `G₁` ids unless noted.
#[derive(Clone, Debug, PartialEq)]
pub struct PipelineTrace {
    pub thresholds: ThresholdSet,
    pub pivot_strategy: PivotStrategy,
    pub input_vertices: usize,
    pub input_edges: usize,
    /// `G₁` id -> input id.
    pub g1_to_input: Vec<VertexId>,
    pub g1_edges: usize,
    pub g1_min_degree: Option<usize>,
    pub bipartition_moves: usize,
    pub side_a: VertexSet,
    pub side_b: VertexSet,
    pub h_edges: usize,
    pub gamma_edges: usize,
    pub pivot: VertexId,
    pub pivot_bad_pairs: u64,
    pub bad_pair_avg: Rational,
    pub pivot_evaluations: usize,
    pub pivot_neighborhood: VertexSet,
    pub a_prime: VertexSet,
    pub b_prime: VertexSet,
    pub b_removed: Vec<VertexId>,
    pub g_prime: BipartiteGraph,
    pub graphs: Option<StageGraphs>,
    pub timings: Vec<StageTiming>,
}

/// Serializable view of a trace with every vertex in input ids.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceDocument {
    pub format: String,
    pub thresholds: ThresholdSet,
    pub pivot_strategy: PivotStrategy,
    pub input_vertices: usize,
    pub input_edges: usize,
    pub g1_vertices: Vec<VertexId>,
    pub g1_edges: usize,
    pub g1_min_degree: Option<usize>,
    pub bipartition_moves: usize,
    pub side_a: Vec<VertexId>,
    pub side_b: Vec<VertexId>,
    pub h_edges: usize,
    pub gamma_edges: usize,
    pub pivot: VertexId,
    pub pivot_bad_pairs: u64,
    pub bad_pair_avg: Rational,
    pub pivot_evaluations: usize,
    pub pivot_neighborhood: Vec<VertexId>,
    pub a_prime: Vec<VertexId>,
    pub b_prime: Vec<VertexId>,
    pub b_removed: Vec<VertexId>,
    pub g_prime_edges: usize,
    /// Per stage: `[vertices, edges]` of the stage's output.
    pub stage_sizes: BTreeMap<String, [usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

impl PipelineTrace {
    pub fn to_input(&self, v: VertexId) -> VertexId {
        self.g1_to_input[v]
    }

    pub fn lift(&self, set: &VertexSet) -> Vec<VertexId> {
        set.iter().map(|v| self.g1_to_input[v]).collect()
    }

    /// Stage timings are wall-clock and therefore excluded unless asked for.
    pub fn document(&self, include_timings: bool) -> TraceDocument {
        let mut stage_sizes = BTreeMap::new();
        stage_sizes.insert(
            "1_input".to_string(),
            [self.input_vertices, self.input_edges],
        );
        stage_sizes.insert(
            "2_peel".to_string(),
            [self.g1_to_input.len(), self.g1_edges],
        );
        stage_sizes.insert(
            "3_bipartition".to_string(),
            [self.side_a.len() + self.side_b.len(), self.h_edges],
        );
        stage_sizes.insert("4_gamma".to_string(), [self.side_a.len(), self.gamma_edges]);
        stage_sizes.insert(
            "5_prune".to_string(),
            [
                self.a_prime.len() + self.b_prime.len(),
                self.g_prime.edge_count(),
            ],
        );
        TraceDocument {
            format: TRACE_FORMAT.to_string(),
            thresholds: self.thresholds.clone(),
            pivot_strategy: self.pivot_strategy.clone(),
            input_vertices: self.input_vertices,
            input_edges: self.input_edges,
            g1_vertices: self.g1_to_input.clone(),
            g1_edges: self.g1_edges,
            g1_min_degree: self.g1_min_degree,
            bipartition_moves: self.bipartition_moves,
            side_a: self.lift(&self.side_a),
            side_b: self.lift(&self.side_b),
            h_edges: self.h_edges,
            gamma_edges: self.gamma_edges,
            pivot: self.to_input(self.pivot),
            pivot_bad_pairs: self.pivot_bad_pairs,
            bad_pair_avg: self.bad_pair_avg.clone(),
            pivot_evaluations: self.pivot_evaluations,
            pivot_neighborhood: self.lift(&self.pivot_neighborhood),
            a_prime: self.lift(&self.a_prime),
            b_prime: self.lift(&self.b_prime),
            b_removed: self.b_removed.iter().map(|&v| self.to_input(v)).collect(),
            g_prime_edges: self.g_prime.edge_count(),
            stage_sizes,
            timings_ms: include_timings.then(|| {
                self.timings
                    .iter()
                    .map(|t| (t.stage.clone(), t.millis))
                    .collect()
            }),
        }
    }
}

/// Result of a pipeline run.
#[derive(Clone, Debug)]
pub struct Extraction {
    /// `G′` in input ids, with `A′` and `B′` as sides.
    pub g_prime: BipartiteGraph,
    pub trace: PipelineTrace,
}

fn check_preconditions(g: &Graph, t: &ThresholdSet) -> Result<(), ExtractError> {
    if g.vertex_count() == 0 {
        return Err(ExtractError::EmptyGraph);
    }
    t.validate()?;
    if t.n != g.vertex_count() {
        return Err(ExtractError::InvalidThresholds(format!(
            "thresholds were built for n = {} but the graph has {} vertices",
            t.n,
            g.vertex_count()
        )));
    }
    if t.mode == ThresholdMode::Paper {
        let bound = t
            .paper_min_n()
            .ok_or_else(|| ExtractError::InvalidThresholds("paper mode needs k".into()))?;
        if Rational::from(t.n) <= bound {
            return Err(ExtractError::PaperModePreconditionViolated { n: t.n, bound });
        }
        let required = t.paper_min_edges().expect("paper mode has k");
        if Rational::from(g.edge_count()) < required {
            return Err(ExtractError::NotEnoughEdges {
                edges: g.edge_count(),
                required,
            });
        }
    }
    Ok(())
}

/// Runs peel → bipartition → auxiliary graph → pivot → prune and returns
/// `G′ = H[A′ ∪ B′]` with the full trace. Deterministic for a fixed config.
pub fn extract(g: &Graph, cfg: &ExtractConfig) -> Result<Extraction, ExtractError> {
    let t = &cfg.thresholds;
    check_preconditions(g, t)?;
    let mut timings = Vec::new();
    let mut clock = Instant::now();
    let mut lap = |stage: &str, timings: &mut Vec<StageTiming>| {
        let now = Instant::now();
        timings.push(StageTiming {
            stage: stage.to_string(),
            millis: (now - clock).as_secs_f64() * 1e3,
        });
        clock = now;
    };

    let g1 = peel_to_min_degree(g, &t.t_peel);
    if g1.graph.vertex_count() == 0 {
        return Err(ExtractError::EmptyAfterPeel {
            t_peel: t.t_peel.clone(),
        });
    }
    lap("peel", &mut timings);

    let (h, moves) = local_bipartition_with_moves(&g1.graph);
    lap("bipartition", &mut timings);

    let gamma = build_gamma(&h, &t.t_codeg);
    lap("gamma", &mut timings);

    let choice = select_pivot(&h, &gamma, &t.t_gamma_deg, &cfg.pivot_strategy)?;
    lap("pivot", &mut timings);

    let pruned = prune_sides(&h, &gamma, choice.pivot, t);
    let g_prime = h
        .restrict(pruned.a_prime.clone(), pruned.b_prime.clone())
        .expect("pruned sets lie on their sides");
    lap("prune", &mut timings);

    let g_prime_input =
        BipartiteGraph::from_sides(g, g1.lift(&pruned.a_prime), g1.lift(&pruned.b_prime))
            .expect("lifted sides are disjoint");

    let trace = PipelineTrace {
        thresholds: t.clone(),
        pivot_strategy: cfg.pivot_strategy.clone(),
        input_vertices: g.vertex_count(),
        input_edges: g.edge_count(),
        g1_edges: g1.graph.edge_count(),
        g1_min_degree: g1.graph.min_degree(),
        bipartition_moves: moves,
        side_a: h.side_a().clone(),
        side_b: h.side_b().clone(),
        h_edges: h.edge_count(),
        gamma_edges: gamma.edge_count(),
        pivot: choice.pivot,
        pivot_bad_pairs: choice.bad_pairs,
        bad_pair_avg: choice.average,
        pivot_evaluations: choice.evaluated,
        pivot_neighborhood: VertexSet::new(h.neighbors(choice.pivot).to_vec()),
        a_prime: pruned.a_prime,
        b_prime: pruned.b_prime,
        b_removed: pruned.removed,
        g_prime,
        timings,
        g1_to_input: g1.to_parent,
        graphs: cfg.record_trace.then_some(StageGraphs {
            g1: g1.graph,
            h,
            gamma,
        }),
    };
    Ok(Extraction {
        g_prime: g_prime_input,
        trace,
    })
}

/// Rebuilds a trace (with intermediate graphs) from its document and the
/// input graph, so it can be audited independently of the run that wrote it.
/// The pivot's bad-pair count is recomputed and must match.
pub fn replay_trace(g: &Graph, doc: &TraceDocument) -> Result<PipelineTrace, ExtractError> {
    let bad = |m: String| ExtractError::Replay(m);
    if doc.input_vertices != g.vertex_count() || doc.input_edges != g.edge_count() {
        return Err(bad(format!(
            "trace is for a graph with {} vertices / {} edges, input has {} / {}",
            doc.input_vertices,
            doc.input_edges,
            g.vertex_count(),
            g.edge_count()
        )));
    }
    let g1_set = VertexSet::new(doc.g1_vertices.clone());
    let g1 = g
        .induced_subgraph(&g1_set)
        .map_err(|e| bad(e.to_string()))?;
    let local = |ids: &[VertexId], what: &str| -> Result<VertexSet, ExtractError> {
        ids.iter()
            .map(|&v| {
                g1.local_id(v)
                    .ok_or_else(|| bad(format!("{what} vertex {v} is not in G1")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(VertexSet::new)
    };
    let side_a = local(&doc.side_a, "side A")?;
    let side_b = local(&doc.side_b, "side B")?;
    let h =
        BipartiteGraph::from_sides(&g1.graph, side_a, side_b).map_err(|e| bad(e.to_string()))?;
    let gamma = build_gamma(&h, &doc.thresholds.t_codeg);
    let pivot = local(&[doc.pivot], "pivot")?.as_slice()[0];
    let pivot_bad_pairs = count_bad_pairs(pivot, &h, &gamma, &doc.thresholds.t_gamma_deg);
    if pivot_bad_pairs != doc.pivot_bad_pairs {
        return Err(bad(format!(
            "pivot bad-pair count is {pivot_bad_pairs}, trace says {}",
            doc.pivot_bad_pairs
        )));
    }
    let a_prime = local(&doc.a_prime, "A'")?;
    let b_prime = local(&doc.b_prime, "B'")?;
    let b_removed = doc
        .b_removed
        .iter()
        .map(|&v| {
            g1.local_id(v)
                .ok_or_else(|| bad(format!("removed vertex {v} is not in G1")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let g_prime = h
        .restrict(a_prime.clone(), b_prime.clone())
        .map_err(|e| bad(e.to_string()))?;
    Ok(PipelineTrace {
        thresholds: doc.thresholds.clone(),
        pivot_strategy: doc.pivot_strategy.clone(),
        input_vertices: doc.input_vertices,
        input_edges: doc.input_edges,
        g1_edges: g1.graph.edge_count(),
        g1_min_degree: g1.graph.min_degree(),
        bipartition_moves: doc.bipartition_moves,
        side_a: h.side_a().clone(),
        side_b: h.side_b().clone(),
        h_edges: h.edge_count(),
        gamma_edges: gamma.edge_count(),
        pivot,
        pivot_bad_pairs,
        bad_pair_avg: doc.bad_pair_avg.clone(),
        pivot_evaluations: doc.pivot_evaluations,
        pivot_neighborhood: VertexSet::new(h.neighbors(pivot).to_vec()),
        a_prime,
        b_prime,
        b_removed,
        g_prime,
        timings: Vec::new(),
        g1_to_input: g1.to_parent,
        graphs: Some(StageGraphs {
            g1: g1.graph,
            h,
            gamma,
        }),
    })
}
