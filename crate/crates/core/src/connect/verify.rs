use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cycle::CycleSearcher;
use super::{CycleWitness, Edge, EdgePair};
use crate::graph::Graph;

/// Which edge pairs to test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PairSelection {
    All,
    /// `count` pairs drawn uniformly with replacement, then deduplicated.
    Sample {
        count: usize,
        seed: u64,
    },
}

impl PairSelection {
    /// Parses `all` or `sample:N`.
    pub fn parse(s: &str, seed: u64) -> Result<Self, String> {
        match s {
            "all" => Ok(PairSelection::All),
            _ => s
                .strip_prefix("sample:")
                .and_then(|n| n.parse().ok())
                .map(|count| PairSelection::Sample { count, seed })
                .ok_or_else(|| format!("expected `all` or `sample:N`, got {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub pairs: PairSelection,
    /// Bound for disjoint pairs; pairs sharing a vertex get two less.
    pub max_cycle: usize,
    pub collect_witnesses: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            pairs: PairSelection::All,
            max_cycle: 8,
            collect_witnesses: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityReport {
    /// Every checked pair lies on a short enough cycle (strong C8-connectivity
    /// at the default bound).
    pub strongly_c8: bool,
    pub max_cycle: usize,
    /// All pairs were checked, so the verdict is a proof either way.
    pub exact: bool,
    pub edges: usize,
    pub pairs_checked: usize,
    pub failures: Vec<EdgePair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<CycleWitness>>,
}

fn sample_pairs(m: usize, count: usize, seed: u64) -> Vec<(usize, usize)> {
    if m < 2 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = BTreeSet::new();
    for _ in 0..count {
        let i = rng.random_range(0..m);
        let mut j = rng.random_range(0..m - 1);
        if j >= i {
            j += 1;
        }
        out.insert((i.min(j), i.max(j)));
    }
    out.into_iter().collect()
}

type PairOutcome = (EdgePair, Option<CycleWitness>);

fn check(s: &mut CycleSearcher<'_>, e: Edge, f: Edge, max_cycle: usize) -> PairOutcome {
    let pair = EdgePair::new(e, f).expect("distinct edges");
    let bound = if pair.shares_vertex() {
        max_cycle.saturating_sub(2)
    } else {
        max_cycle
    };
    let found = if bound < 3 {
        None
    } else {
        s.find(e, f, bound).expect("edges of g")
    };
    (pair, found)
}

/// Checks that every pair of distinct edges lies on a cycle of at most
/// `max_cycle` edges, or `max_cycle - 2` when the edges share a vertex.
/// Failures and witnesses are listed in edge-pair order.
pub fn verify_strongly_connected(g: &Graph, opts: &VerifyOptions) -> ConnectivityReport {
    let edges: Vec<Edge> = g.edges().collect();
    let m = edges.len();
    let max_cycle = opts.max_cycle;
    let outcomes: Vec<PairOutcome> = match &opts.pairs {
        PairSelection::All => (0..m)
            .into_par_iter()
            .map_init(
                || CycleSearcher::new(g),
                |s, i| {
                    (i + 1..m)
                        .map(|j| check(s, edges[i], edges[j], max_cycle))
                        .collect::<Vec<_>>()
                },
            )
            .flatten_iter()
            .collect(),
        PairSelection::Sample { count, seed } => sample_pairs(m, *count, *seed)
            .into_par_iter()
            .map_init(
                || CycleSearcher::new(g),
                |s, (i, j)| check(s, edges[i], edges[j], max_cycle),
            )
            .collect(),
    };
    let pairs_checked = outcomes.len();
    let failures: Vec<EdgePair> = outcomes
        .iter()
        .filter(|(_, w)| w.is_none())
        .map(|(p, _)| *p)
        .collect();
    let witnesses = opts
        .collect_witnesses
        .then(|| outcomes.into_iter().filter_map(|(_, w)| w).collect());
    ConnectivityReport {
        strongly_c8: failures.is_empty(),
        max_cycle,
        exact: opts.pairs == PairSelection::All,
        edges: m,
        pairs_checked,
        failures,
        witnesses,
    }
}

/// Strong C8-connectivity with the default bound of 8.
pub fn verify_strong_c8(g: &Graph, pairs: &PairSelection) -> ConnectivityReport {
    verify_strongly_connected(
        g,
        &VerifyOptions {
            pairs: pairs.clone(),
            ..VerifyOptions::default()
        },
    )
}
