use serde::{Deserialize, Serialize};

use super::pivot::BadPairIndex;
use super::ThresholdSet;
use crate::graph::{BipartiteGraph, Graph, VertexId, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruneOutcome {
    pub a_prime: VertexSet,
    pub b_prime: VertexSet,
    /// Vertices removed from `N_H(w)`, in deletion order.
    pub removed: Vec<VertexId>,
}

/// Two-sided pruning around the pivot `w`.
///
/// `A′` is the auxiliary-graph neighborhood of `w`. `B′` starts as `N_H(w)`;
/// the smallest-id vertex with at least `t_bad_per_vertex` partners `u` (in
/// the current set) such that `w` is bad for `{u, v}` is deleted, counts are
/// updated, and the scan repeats until no vertex qualifies.
pub fn prune_sides(
    h: &BipartiteGraph,
    gamma: &Graph,
    w: VertexId,
    thresholds: &ThresholdSet,
) -> PruneOutcome {
    let w_pos = h.index_in_side(w).expect("pivot on side A");
    let side_a = h.side_a().as_slice();
    let a_prime = VertexSet::new(gamma.neighbors(w_pos).iter().map(|&i| side_a[i]).collect());

    let nbrs = h.neighbors(w);
    let bad = BadPairIndex::new(h, gamma, &thresholds.t_gamma_deg).bad_matrix(w);
    let cutoff = thresholds.t_bad_per_vertex.ceil_i128();
    let mut alive = vec![true; nbrs.len()];
    let mut partners: Vec<i128> = bad
        .iter()
        .map(|row| row.iter().filter(|&&x| x).count() as i128)
        .collect();
    let mut removed = Vec::new();
    while let Some(i) = (0..nbrs.len()).find(|&i| alive[i] && partners[i] >= cutoff) {
        alive[i] = false;
        removed.push(nbrs[i]);
        for j in 0..nbrs.len() {
            if alive[j] && bad[i][j] {
                partners[j] -= 1;
            }
        }
    }
    let b_prime = nbrs
        .iter()
        .zip(&alive)
        .filter(|(_, &a)| a)
        .map(|(&v, _)| v)
        .collect();
    PruneOutcome {
        a_prime,
        b_prime,
        removed,
    }
}
