use std::collections::BTreeSet;

use crate::graph::{Graph, InducedSubgraph, VertexId, VertexSet};
use crate::rational::Rational;

/// Order in which vertices leave the graph when every vertex of degree
/// below `t` is deleted, smallest id first among the current violators.
pub fn peel_sequence(g: &Graph, t: &Rational) -> Vec<VertexId> {
    let cutoff = t.ceil_i128();
    let n = g.vertex_count();
    let mut degree: Vec<i128> = (0..n).map(|v| g.neighbors(v).len() as i128).collect();
    let mut alive = vec![true; n];
    let mut violators: BTreeSet<VertexId> = (0..n).filter(|&v| degree[v] < cutoff).collect();
    let mut removed = Vec::with_capacity(violators.len());
    while let Some(v) = violators.pop_first() {
        alive[v] = false;
        removed.push(v);
        for &w in g.neighbors(v) {
            if alive[w] {
                degree[w] -= 1;
                if degree[w] < cutoff {
                    violators.insert(w);
                }
            }
        }
    }
    removed
}

/// The maximal induced subgraph with minimum degree at least `t`.
pub fn peel_to_min_degree(g: &Graph, t: &Rational) -> InducedSubgraph {
    let mut keep = vec![true; g.vertex_count()];
    for v in peel_sequence(g, t) {
        keep[v] = false;
    }
    let vs: VertexSet = (0..g.vertex_count()).filter(|&v| keep[v]).collect();
    g.induced_subgraph(&vs).expect("ids come from g")
}
