use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::pivot::BadPairIndex;
use super::{ExtractError, PipelineTrace, PivotStrategy};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeelAudit {
    pub t_peel: Rational,
    pub min_degree: Option<usize>,
    pub min_degree_ok: bool,
    pub input_edges: usize,
    pub g1_edges: usize,
    /// `e(G) - n * t_peel`.
    pub edge_floor: Rational,
    pub edge_floor_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BipartitionAudit {
    /// Vertices with `H`-degree below `ceil(G₁-degree / 2)`.
    pub half_degree_violations: usize,
    pub g1_edges: usize,
    pub h_edges: usize,
    pub half_edges_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PivotAudit {
    pub bad_pairs: u64,
    pub average: Rational,
    pub at_most_average: bool,
    /// Paper mode: `n²/(2¹³k⁴)`; the pivot must stay strictly below it.
    pub paper_bound: Option<Rational>,
    pub paper_bound_ok: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PruningAudit {
    pub neighborhood: usize,
    pub removed: usize,
    /// `pivot_bad_pairs / t_bad_per_vertex`.
    pub removal_bound: Rational,
    pub removal_bound_ok: bool,
    /// Largest number of bad partners a `B′` vertex keeps inside `B′`.
    pub max_bad_partners: Option<usize>,
    pub fixed_point_ok: bool,
    pub a_prime_is_gamma_neighborhood: bool,
    pub b_prime_in_neighborhood: bool,
    /// Paper mode: `n/(2⁶k²)`.
    pub paper_removal_bound: Option<Rational>,
    pub paper_removal_ok: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PaperGPrimeChecks {
    pub min_a_degree_bound: Rational,
    pub min_a_degree_ok: bool,
    pub edge_bound: Rational,
    pub edges_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GPrimeAudit {
    pub a_size: usize,
    pub b_size: usize,
    pub edges: usize,
    pub min_a_degree: Option<usize>,
    pub empty_a: bool,
    pub empty_b: bool,
    pub paper: Option<PaperGPrimeChecks>,
}

/// Stage-by-stage checks of a completed run. Peel, bipartition and pruning
/// guarantees hold unconditionally; the paper-mode fields are only filled
/// when the thresholds come from the formulas.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageAuditReport {
    pub peel: PeelAudit,
    pub bipartition: BipartitionAudit,
    pub pivot: PivotAudit,
    pub pruning: PruningAudit,
    pub g_prime: GPrimeAudit,
    /// Comparison used for each threshold.
    pub comparisons: BTreeMap<String, String>,
}

impl StageAuditReport {
    /// All construction guarantees that hold for any positive thresholds.
    pub fn unconditional_ok(&self) -> bool {
        self.peel.min_degree_ok
            && self.peel.edge_floor_ok
            && self.bipartition.half_degree_violations == 0
            && self.bipartition.half_edges_ok
            && self.pivot.at_most_average
            && self.pruning.removal_bound_ok
            && self.pruning.fixed_point_ok
            && self.pruning.a_prime_is_gamma_neighborhood
            && self.pruning.b_prime_in_neighborhood
    }

    /// Paper-mode inequalities, `None` in custom mode.
    pub fn paper_ok(&self) -> Option<bool> {
        let p = self.g_prime.paper.as_ref()?;
        Some(
            p.min_a_degree_ok
                && p.edges_ok
                && self.pivot.paper_bound_ok.unwrap_or(false)
                && self.pruning.paper_removal_ok.unwrap_or(false),
        )
    }
}

fn comparisons() -> BTreeMap<String, String> {
    [
        ("t_peel", "kept iff degree >= t_peel"),
        ("t_codeg", "auxiliary edge iff codegree >= t_codeg"),
        (
            "t_gamma_deg",
            "bad iff auxiliary degree inside N_H(u,v) <= t_gamma_deg",
        ),
        (
            "t_bad_per_vertex",
            "pruned iff bad partners >= t_bad_per_vertex; kept vertices have < t_bad_per_vertex",
        ),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v.to_string()))
    .collect()
}

pub fn audit_trace(trace: &PipelineTrace) -> Result<StageAuditReport, ExtractError> {
    let graphs = trace
        .graphs
        .as_ref()
        .ok_or(ExtractError::IntermediatesNotRecorded)?;
    let t = &trace.thresholds;
    let (g1, h, gamma) = (&graphs.g1, &graphs.h, &graphs.gamma);

    let min_degree = g1.min_degree();
    let edge_floor =
        Rational::from(trace.input_edges) - Rational::from(trace.input_vertices) * t.t_peel.clone();
    let peel = PeelAudit {
        t_peel: t.t_peel.clone(),
        min_degree,
        min_degree_ok: min_degree.is_none_or(|d| t.t_peel.cmp_count(d as u64).is_ge()),
        input_edges: trace.input_edges,
        g1_edges: g1.edge_count(),
        edge_floor_ok: Rational::from(g1.edge_count()) >= edge_floor,
        edge_floor,
    };

    let bipartition = BipartitionAudit {
        half_degree_violations: (0..g1.vertex_count())
            .filter(|&v| 2 * h.degree(v) < g1.neighbors(v).len())
            .count(),
        g1_edges: g1.edge_count(),
        h_edges: h.edge_count(),
        half_edges_ok: 2 * h.edge_count() >= g1.edge_count(),
    };

    // Only an exhaustive minimum is guaranteed not to exceed the mean.
    let at_most_average = match trace.pivot_strategy {
        PivotStrategy::Exhaustive => Rational::from(trace.pivot_bad_pairs) <= trace.bad_pair_avg,
        PivotStrategy::Sampled { .. } => true,
    };
    let paper_bound = t.paper_bad_pair_bound();
    let pivot = PivotAudit {
        bad_pairs: trace.pivot_bad_pairs,
        average: trace.bad_pair_avg.clone(),
        at_most_average,
        paper_bound_ok: paper_bound
            .as_ref()
            .map(|b| Rational::from(trace.pivot_bad_pairs) < *b),
        paper_bound,
    };

    let w = trace.pivot;
    let nbrs = h.neighbors(w);
    let bad = BadPairIndex::new(h, gamma, &t.t_gamma_deg).bad_matrix(w);
    let kept: Vec<usize> = (0..nbrs.len())
        .filter(|&i| trace.b_prime.contains(nbrs[i]))
        .collect();
    let max_bad_partners = kept
        .iter()
        .map(|&i| kept.iter().filter(|&&j| bad[i][j]).count())
        .max();
    let removed = trace.pivot_neighborhood.len() - trace.b_prime.len();
    let removal_bound = Rational::from(trace.pivot_bad_pairs) / t.t_bad_per_vertex.clone();
    let w_pos = h.index_in_side(w).expect("pivot on side A");
    let gamma_nbhd: Vec<usize> = gamma
        .neighbors(w_pos)
        .iter()
        .map(|&i| h.side_a().as_slice()[i])
        .collect();
    let paper_removal_bound = t.paper_min_a_degree();
    let pruning = PruningAudit {
        neighborhood: nbrs.len(),
        removed,
        removal_bound_ok: Rational::from(removed) <= removal_bound,
        removal_bound,
        fixed_point_ok: max_bad_partners
            .is_none_or(|m| t.t_bad_per_vertex.cmp_count(m as u64).is_lt()),
        max_bad_partners,
        a_prime_is_gamma_neighborhood: trace.a_prime.as_slice() == gamma_nbhd.as_slice(),
        b_prime_in_neighborhood: trace.b_prime.is_subset(&trace.pivot_neighborhood),
        paper_removal_ok: paper_removal_bound
            .as_ref()
            .map(|b| Rational::from(removed) <= *b),
        paper_removal_bound,
    };

    let gp = &trace.g_prime;
    let min_a_degree = gp.side_a().iter().map(|a| gp.degree(a)).min();
    let paper = match (t.paper_min_a_degree(), t.paper_edge_bound()) {
        (Some(min_a_degree_bound), Some(edge_bound)) => Some(PaperGPrimeChecks {
            min_a_degree_ok: min_a_degree
                .is_some_and(|d| min_a_degree_bound.cmp_count(d as u64).is_ge()),
            min_a_degree_bound,
            edges_ok: edge_bound.cmp_count(gp.edge_count() as u64).is_ge(),
            edge_bound,
        }),
        _ => None,
    };
    let g_prime = GPrimeAudit {
        a_size: gp.side_a().len(),
        b_size: gp.side_b().len(),
        edges: gp.edge_count(),
        min_a_degree,
        empty_a: gp.side_a().is_empty(),
        empty_b: gp.side_b().is_empty(),
        paper,
    };

    Ok(StageAuditReport {
        peel,
        bipartition,
        pivot,
        pruning,
        g_prime,
        comparisons: comparisons(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract::{extract, ExtractConfig, ThresholdSet};
    use crate::gen::{complete_bipartite_interleaved, disjoint_cliques, uniform_random};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn cfg(n: usize, t: [&str; 4]) -> ExtractConfig {
        ExtractConfig::new(ThresholdSet::custom(n, r(t[0]), r(t[1]), r(t[2]), r(t[3])).unwrap())
    }

    #[test]
    fn unconditional_guarantees_on_random_runs() {
        for seed in 0..8 {
            let g = uniform_random(80, &r("1/2"), seed).unwrap();
            let out = extract(&g, &cfg(80, ["10", "6", "3", "4"])).unwrap();
            let report = audit_trace(&out.trace).unwrap();
            assert!(report.unconditional_ok(), "{report:#?}");
            assert_eq!(report.paper_ok(), None);
        }
    }

    #[test]
    fn cliques_report_one_clique() {
        let g = disjoint_cliques(64, 4).unwrap();
        let out = extract(&g, &cfg(64, ["7", "1", "1/2", "1000000"])).unwrap();
        let report = audit_trace(&out.trace).unwrap();
        assert!(report.unconditional_ok());
        // Each clique of 16 splits 8/8; the pivot keeps 7 A-vertices and 8 B-vertices.
        assert_eq!(
            (
                report.g_prime.a_size,
                report.g_prime.b_size,
                report.g_prime.edges
            ),
            (7, 8, 56)
        );
        assert_eq!(report.pruning.removed, 0);
    }

    #[test]
    fn k33_run_reports_single_b_vertex() {
        let kb = complete_bipartite_interleaved(3, 3).unwrap();
        let out = extract(kb.graph(), &cfg(6, ["1", "3", "2", "1"])).unwrap();
        let report = audit_trace(&out.trace).unwrap();
        assert!(report.unconditional_ok());
        assert_eq!(report.pruning.removed, 2);
        assert_eq!((report.g_prime.b_size, report.g_prime.edges), (1, 2));
        assert!(!report.g_prime.empty_b);
    }

    #[test]
    fn needs_recorded_graphs() {
        let g = uniform_random(30, &r("1/2"), 1).unwrap();
        let mut c = cfg(30, ["3", "2", "1", "2"]);
        c.record_trace = false;
        let out = extract(&g, &c).unwrap();
        assert_eq!(
            audit_trace(&out.trace),
            Err(ExtractError::IntermediatesNotRecorded)
        );
    }
}
