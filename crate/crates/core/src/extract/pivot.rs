use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gamma::{and3_count, rows};
use super::{ExtractError, PivotStrategy};
use crate::graph::{BipartiteGraph, Graph, Side, VertexId};
use crate::rational::Rational;

/// Whether `w ∈ A` is bad for the pair `{u, v} ⊆ B`: `w` is a common
/// neighbor of `u` and `v` and has at most `t_gamma_deg` auxiliary-graph
/// neighbors inside `N_H(u, v)`.
///
/// Direct evaluation from sorted adjacency; [`BadPairIndex`] is the bulk path.
pub fn is_bad(
    w: VertexId,
    u: VertexId,
    v: VertexId,
    h: &BipartiteGraph,
    gamma: &Graph,
    t_gamma_deg: &Rational,
) -> bool {
    let Some(w_pos) = h.index_in_side(w).filter(|_| h.side_of(w) == Some(Side::A)) else {
        return false;
    };
    if u == v {
        return false;
    }
    let Ok(common) = h.graph().common_neighbors(u, v) else {
        return false;
    };
    if !common.contains(w) {
        return false;
    }
    let inside = common
        .iter()
        .filter(|&z| z != w && gamma.has_edge(w_pos, h.index_in_side(z).expect("A vertex")))
        .count();
    t_gamma_deg.cmp_count(inside as u64).is_le()
}

/// Precomputed bitsets for bulk bad-pair evaluation.
pub struct BadPairIndex<'a> {
    h: &'a BipartiteGraph,
    /// B position -> neighbors as A positions.
    b_rows: Vec<FixedBitSet>,
    /// A position -> auxiliary-graph neighbors as A positions.
    gamma_rows: Vec<FixedBitSet>,
    /// A degree `d` is bad iff `d <= bad_cutoff`.
    bad_cutoff: i128,
}

impl<'a> BadPairIndex<'a> {
    pub fn new(h: &'a BipartiteGraph, gamma: &Graph, t_gamma_deg: &Rational) -> Self {
        let na = h.side_a().len();
        let b = h.side_b().as_slice();
        let b_rows = rows(b.len(), na, |i, row| {
            for &a in h.neighbors(b[i]) {
                row.insert(h.index_in_side(a).expect("cross edge"));
            }
        });
        let gamma_rows = rows(na, na, |i, row| {
            for &j in gamma.neighbors(i) {
                row.insert(j);
            }
        });
        BadPairIndex {
            h,
            b_rows,
            gamma_rows,
            bad_cutoff: t_gamma_deg.floor_i128(),
        }
    }

    fn pos(&self, v: VertexId) -> usize {
        self.h.index_in_side(v).expect("vertex of h")
    }

    /// For `u, v ∈ N_H(w)`.
    fn bad_within(&self, w_pos: usize, u_pos: usize, v_pos: usize) -> bool {
        let inside = and3_count(
            &self.b_rows[u_pos],
            &self.b_rows[v_pos],
            &self.gamma_rows[w_pos],
        );
        inside as i128 <= self.bad_cutoff
    }

    /// Number of unordered pairs of B for which `w` is bad. Only pairs inside
    /// `N_H(w)` can count.
    pub fn count(&self, w: VertexId) -> u64 {
        let w_pos = self.pos(w);
        let nbrs: Vec<usize> = self.h.neighbors(w).iter().map(|&b| self.pos(b)).collect();
        let mut count = 0;
        for (i, &u) in nbrs.iter().enumerate() {
            for &v in &nbrs[i + 1..] {
                if self.bad_within(w_pos, u, v) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Symmetric bad-pair relation on `N_H(w)`, indexed like `h.neighbors(w)`.
    pub fn bad_matrix(&self, w: VertexId) -> Vec<Vec<bool>> {
        let w_pos = self.pos(w);
        let nbrs: Vec<usize> = self.h.neighbors(w).iter().map(|&b| self.pos(b)).collect();
        let d = nbrs.len();
        let mut m = vec![vec![false; d]; d];
        for i in 0..d {
            for j in i + 1..d {
                let bad = self.bad_within(w_pos, nbrs[i], nbrs[j]);
                m[i][j] = bad;
                m[j][i] = bad;
            }
        }
        m
    }
}

pub fn count_bad_pairs(
    w: VertexId,
    h: &BipartiteGraph,
    gamma: &Graph,
    t_gamma_deg: &Rational,
) -> u64 {
    if h.side_of(w) != Some(Side::A) {
        return 0;
    }
    BadPairIndex::new(h, gamma, t_gamma_deg).count(w)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PivotChoice {
    pub pivot: VertexId,
    pub bad_pairs: u64,
    /// Mean bad-pair count over the evaluated candidates.
    pub average: Rational,
    /// Number of candidate evaluations (with repetition when sampling).
    pub evaluated: usize,
}

/// Picks the pivot minimizing the bad-pair count.
///
/// Exhaustive: every A-vertex is evaluated; ties go to the smallest id, and
/// the result is at most the exact average over A. Sampled: `count` draws
/// (with replacement) from a ChaCha8 stream seeded with `seed`; the best
/// draw wins and the average is over the draws.
pub fn select_pivot(
    h: &BipartiteGraph,
    gamma: &Graph,
    t_gamma_deg: &Rational,
    strategy: &PivotStrategy,
) -> Result<PivotChoice, ExtractError> {
    let side_a = h.side_a().as_slice();
    if side_a.is_empty() {
        return Err(ExtractError::EmptySideA);
    }
    let candidates: Vec<VertexId> = match *strategy {
        PivotStrategy::Exhaustive => side_a.to_vec(),
        PivotStrategy::Sampled { count, seed } => {
            if count == 0 {
                return Err(ExtractError::InvalidThresholds(
                    "sampled pivot count must be >= 1".into(),
                ));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| side_a[rng.random_range(0..side_a.len())])
                .collect()
        }
    };
    let index = BadPairIndex::new(h, gamma, t_gamma_deg);
    let counts: Vec<u64> = candidates.par_iter().map(|&w| index.count(w)).collect();
    let (pivot, bad_pairs) = candidates
        .iter()
        .zip(&counts)
        .map(|(&w, &c)| (w, c))
        .min_by_key(|&(w, c)| (c, w))
        .expect("nonempty");
    let total: u128 = counts.iter().map(|&c| u128::from(c)).sum();
    let average = Rational::new(total, candidates.len()).expect("nonzero");
    Ok(PivotChoice {
        pivot,
        bad_pairs,
        average,
        evaluated: candidates.len(),
    })
}
