use std::collections::BTreeSet;

use crate::graph::{BipartiteGraph, Graph, VertexSet};

/// Local-search bipartition of `g`.
///
/// Starts from the split by id parity (even ids on side A) and repeatedly
/// moves the smallest-id vertex that has more neighbors on its own side than
/// across. Each move raises the cut by at least one, so there are at most
/// `e(g)` moves. At the fixed point every vertex keeps at least half of its
/// neighbors across the cut. Sides are then oriented so that `|B| <= |A|`.
pub fn local_bipartition(g: &Graph) -> BipartiteGraph {
    local_bipartition_with_moves(g).0
}

/// As [`local_bipartition`], also returning the number of moves made.
pub fn local_bipartition_with_moves(g: &Graph) -> (BipartiteGraph, usize) {
    let n = g.vertex_count();
    let mut on_b: Vec<bool> = (0..n).map(|v| v % 2 == 1).collect();
    let mut same: Vec<usize> = (0..n)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .filter(|&&w| on_b[w] == on_b[v])
                .count()
        })
        .collect();
    let violates = |v: usize, same: &[usize]| 2 * same[v] > g.neighbors(v).len();
    let mut queue: BTreeSet<usize> = (0..n).filter(|&v| violates(v, &same)).collect();
    let mut moves = 0;
    while let Some(v) = queue.pop_first() {
        on_b[v] = !on_b[v];
        same[v] = g.neighbors(v).len() - same[v];
        moves += 1;
        for &w in g.neighbors(v) {
            if on_b[w] == on_b[v] {
                same[w] += 1;
            } else {
                same[w] -= 1;
            }
            if violates(w, &same) {
                queue.insert(w);
            } else {
                queue.remove(&w);
            }
        }
    }
    let side_a: VertexSet = (0..n).filter(|&v| !on_b[v]).collect();
    let side_b: VertexSet = (0..n).filter(|&v| on_b[v]).collect();
    let h = BipartiteGraph::from_sides(g, side_a, side_b)
        .expect("parity split is a partition")
        .normalized();
    (h, moves)
}
