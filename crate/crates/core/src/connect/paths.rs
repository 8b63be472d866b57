use serde::{Deserialize, Serialize};

use super::ConnectError;
use crate::extract::gamma;
use crate::graph::{BipartiteGraph, Side, VertexId};
use crate::rational::Rational;

/// Number of paths `a, b₁, a₁, b` with all four vertices distinct, for
/// `a` in A and `b` in B.
pub fn count_paths_len3(
    gp: &BipartiteGraph,
    a: VertexId,
    b: VertexId,
) -> Result<u64, ConnectError> {
    gp.require_side(a, Side::A)?;
    gp.require_side(b, Side::B)?;
    // `a` is a common neighbor of b₁ and b exactly when a ~ b.
    let own = u64::from(gp.graph().has_edge(a, b));
    Ok(gp
        .neighbors(a)
        .iter()
        .filter(|&&b1| b1 != b)
        .map(|&b1| gp.codegree(b1, b) as u64 - own)
        .sum())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Path3Violation {
    pub a: VertexId,
    pub b: VertexId,
    pub count: u64,
    pub bound: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Path3Report {
    pub holds: bool,
    pub pairs_checked: usize,
    pub min_count: Option<u64>,
    /// Pairs below `(deg(a) - t2 - 1)(t3 - 1)`.
    pub violations: Vec<Path3Violation>,
    /// Optional uniform floor checked in addition.
    pub uniform_bound: Option<Rational>,
    pub uniform_bound_ok: Option<bool>,
}

/// Checks `#paths(a, b) >= (deg(a) - t2 - 1)(t3 - 1)` for every `a` in A and
/// `b` in B, and, if given, `#paths(a, b) >= uniform_bound` for all pairs.
pub fn verify_path3_bound(
    gp: &BipartiteGraph,
    t2: &Rational,
    t3: &Rational,
    uniform_bound: Option<&Rational>,
) -> Path3Report {
    let a_side = gp.side_a().as_slice();
    let b_side = gp.side_b().as_slice();
    let rows = gamma::rows(b_side.len(), a_side.len(), |i, row| {
        for &a in gp.neighbors(b_side[i]) {
            row.insert(gp.index_in_side(a).expect("cross edge"));
        }
    });
    let codeg: Vec<Vec<u64>> = (0..b_side.len())
        .map(|i| {
            (0..b_side.len())
                .map(|j| gamma::and_count(&rows[i], &rows[j]) as u64)
                .collect()
        })
        .collect();
    let t3_less_one = t3 - &Rational::one();
    let one = Rational::one();

    let mut violations = Vec::new();
    let mut min_count: Option<u64> = None;
    for &a in a_side {
        let bound = (Rational::from(gp.degree(a)) - t2.clone() - one.clone()) * t3_less_one.clone();
        for (j, &b) in b_side.iter().enumerate() {
            let own = u64::from(rows[j].contains(gp.index_in_side(a).expect("side A")));
            let count: u64 = gp
                .neighbors(a)
                .iter()
                .map(|&b1| gp.index_in_side(b1).expect("side B"))
                .filter(|&i| i != j)
                .map(|i| codeg[i][j] - own)
                .sum();
            min_count = Some(min_count.map_or(count, |m| m.min(count)));
            if bound.cmp_count(count).is_lt() {
                violations.push(Path3Violation {
                    a,
                    b,
                    count,
                    bound: bound.clone(),
                });
            }
        }
    }
    let uniform_bound_ok = uniform_bound.map(|u| min_count.is_none_or(|m| u.cmp_count(m).is_ge()));
    Path3Report {
        holds: violations.is_empty() && uniform_bound_ok != Some(false),
        pairs_checked: a_side.len() * b_side.len(),
        min_count,
        violations,
        uniform_bound: uniform_bound.cloned(),
        uniform_bound_ok,
    }
}
