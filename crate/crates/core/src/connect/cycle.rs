use std::collections::VecDeque;

use super::{ConnectError, CycleWitness, Edge, EdgePair};
use crate::graph::{Graph, VertexId};

/// Reusable scratch space for bounded cycle searches on one graph.
///
/// Visited marks are generation stamps, so each search starts in O(1)
/// instead of clearing per-vertex arrays.
pub struct CycleSearcher<'g> {
    g: &'g Graph,
    stamp: u64,
    blocked: Vec<u64>,
    seen: Vec<u64>,
    dist: Vec<usize>,
    parent: Vec<VertexId>,
    lower: Vec<usize>,
    lower_seen: Vec<u64>,
    queue: VecDeque<VertexId>,
    path: Vec<VertexId>,
}

impl<'g> CycleSearcher<'g> {
    pub fn new(g: &'g Graph) -> Self {
        let n = g.vertex_count();
        CycleSearcher {
            g,
            stamp: 0,
            blocked: vec![0; n],
            seen: vec![0; n],
            dist: vec![0; n],
            parent: vec![0; n],
            lower: vec![0; n],
            lower_seen: vec![0; n],
            queue: VecDeque::new(),
            path: Vec::new(),
        }
    }

    fn next_stamp(&mut self) -> u64 {
        self.stamp += 1;
        self.stamp
    }

    /// Shortest path from `s` to `t` of at most `limit` edges avoiding the
    /// vertices blocked under `block`. Returns the path including both ends.
    /// Only `seen` is restamped, so a caller's blocked set survives.
    fn bounded_path(
        &mut self,
        s: VertexId,
        t: VertexId,
        limit: usize,
        block: u64,
    ) -> Option<Vec<VertexId>> {
        if limit == 0 {
            return None;
        }
        let mark = self.next_stamp();
        self.queue.clear();
        self.seen[s] = mark;
        self.dist[s] = 0;
        self.queue.push_back(s);
        while let Some(x) = self.queue.pop_front() {
            if self.dist[x] >= limit {
                continue;
            }
            for &y in self.g.neighbors(x) {
                if self.seen[y] == mark || (self.blocked[y] == block && y != t) {
                    continue;
                }
                self.seen[y] = mark;
                self.dist[y] = self.dist[x] + 1;
                self.parent[y] = x;
                if y == t {
                    let mut out = vec![t];
                    let mut cur = t;
                    while cur != s {
                        cur = self.parent[cur];
                        out.push(cur);
                    }
                    out.reverse();
                    return Some(out);
                }
                self.queue.push_back(y);
            }
        }
        None
    }

    /// Distances to `t` in `G` minus the currently blocked set, up to `limit`.
    /// Unreached vertices keep `usize::MAX`.
    fn lower_bounds(&mut self, t: VertexId, limit: usize, block: u64) -> u64 {
        let mark = self.next_stamp();
        self.queue.clear();
        self.lower_seen[t] = mark;
        self.lower[t] = 0;
        self.queue.push_back(t);
        while let Some(x) = self.queue.pop_front() {
            if self.lower[x] >= limit {
                continue;
            }
            for &y in self.g.neighbors(x) {
                if self.lower_seen[y] == mark || self.blocked[y] == block {
                    continue;
                }
                self.lower_seen[y] = mark;
                self.lower[y] = self.lower[x] + 1;
                self.queue.push_back(y);
            }
        }
        mark
    }

    fn lower_of(&self, v: VertexId, mark: u64) -> usize {
        if self.lower_seen[v] == mark {
            self.lower[v]
        } else {
            usize::MAX
        }
    }

    /// Cycle through `{s,x}` and `{s,y}`: a path `x → y` avoiding `s`.
    fn through_shared(
        &mut self,
        s: VertexId,
        x: VertexId,
        y: VertexId,
        max_len: usize,
    ) -> Option<Vec<VertexId>> {
        let block = self.next_stamp();
        self.blocked[s] = block;
        let p = self.bounded_path(x, y, max_len.checked_sub(2)?, block)?;
        let mut cycle = vec![s];
        cycle.extend(p);
        Some(cycle)
    }

    /// Cycle `a, b, P.., c, d, Q.., a`: `P` runs `b → c`, `Q` runs `d → a`,
    /// vertex-disjoint, with `|P| + |Q| + 2 <= max_len`.
    fn through_disjoint(
        &mut self,
        (a, b): Edge,
        (c, d): Edge,
        max_len: usize,
    ) -> Option<Vec<VertexId>> {
        let p_max = max_len.checked_sub(3)?;
        let block = self.next_stamp();
        self.blocked[a] = block;
        self.blocked[d] = block;
        let lower = self.lower_bounds(c, p_max, block);
        if self.lower_of(b, lower) > p_max {
            return None;
        }
        self.path.clear();
        self.path.push(b);
        self.blocked[b] = block;
        let found = self.extend_p(c, d, a, p_max, max_len, block, lower);
        if let Some(q) = found {
            let mut cycle = vec![a];
            cycle.extend_from_slice(&self.path);
            cycle.extend_from_slice(&q[..q.len() - 1]);
            return Some(cycle);
        }
        None
    }

    /// Depth-first enumeration of simple paths from the end of `self.path`
    /// to `c`. On success `self.path` holds `P` and the returned vector is `Q`.
    #[allow(clippy::too_many_arguments)]
    fn extend_p(
        &mut self,
        c: VertexId,
        d: VertexId,
        a: VertexId,
        p_max: usize,
        max_len: usize,
        block: u64,
        lower: u64,
    ) -> Option<Vec<VertexId>> {
        let cur = *self.path.last().expect("path starts at b");
        let p_len = self.path.len() - 1;
        if cur == c {
            // P's vertices stay blocked while Q is searched; `a` must be
            // reachable, so it is unblocked for this step.
            self.blocked[a] = 0;
            self.blocked[d] = 0;
            let q = self.bounded_path(d, a, max_len - 2 - p_len, block);
            self.blocked[a] = block;
            self.blocked[d] = block;
            return q;
        }
        let g = self.g;
        for &y in g.neighbors(cur) {
            if self.blocked[y] == block {
                continue;
            }
            let lb = self.lower_of(y, lower);
            if lb == usize::MAX || p_len + 1 + lb > p_max {
                continue;
            }
            self.blocked[y] = block;
            self.path.push(y);
            if let Some(q) = self.extend_p(c, d, a, p_max, max_len, block, lower) {
                return Some(q);
            }
            self.path.pop();
            self.blocked[y] = 0;
        }
        None
    }

    /// Shortest-first is not guaranteed; any cycle within `max_len` is returned.
    pub fn find(
        &mut self,
        e: Edge,
        f: Edge,
        max_len: usize,
    ) -> Result<Option<CycleWitness>, ConnectError> {
        if max_len < 3 {
            return Err(ConnectError::MaxLenTooSmall(max_len));
        }
        for (u, v) in [e, f] {
            if !self.g.has_edge(u, v) {
                return Err(ConnectError::NotAnEdge(u, v));
            }
        }
        let pair = EdgePair::new(e, f)?;
        let cycle = if pair.shares_vertex() {
            self.through_shared(pair.e.0, pair.e.1, pair.f.1, max_len)
        } else {
            let (a, b) = pair.e;
            let (c, d) = pair.f;
            self.through_disjoint((a, b), (c, d), max_len)
                .or_else(|| self.through_disjoint((a, b), (d, c), max_len))
        };
        Ok(cycle.map(|c| CycleWitness::new(pair, c)))
    }
}

/// Exhaustive search for a simple cycle of at most `max_len` edges that
/// contains both `e` and `f`. `Ok(None)` means no such cycle exists.
pub fn cycle_through_edges(
    g: &Graph,
    e: Edge,
    f: Edge,
    max_len: usize,
) -> Result<Option<CycleWitness>, ConnectError> {
    CycleSearcher::new(g).find(e, f, max_len)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connect::validate_witness;
    use crate::graph::tests::{complete, triangle};
    use proptest::prelude::*;

    fn cycle_graph(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    /// Brute force: every simple cycle as a vertex sequence starting at its
    /// smallest vertex, by extending all simple paths.
    fn brute_force(g: &Graph, e: Edge, f: Edge, max_len: usize) -> bool {
        fn on_cycle(c: &[usize], (u, v): Edge) -> bool {
            let k = c.len();
            (0..k).any(|i| {
                let (x, y) = (c[i], c[(i + 1) % k]);
                (x, y) == (u, v) || (x, y) == (v, u)
            })
        }
        fn grow(g: &Graph, path: &mut Vec<usize>, max_len: usize, e: Edge, f: Edge) -> bool {
            let start = path[0];
            let last = *path.last().unwrap();
            if path.len() >= 3 && g.has_edge(last, start) && on_cycle(path, e) && on_cycle(path, f)
            {
                return true;
            }
            if path.len() == max_len {
                return false;
            }
            for &y in g.neighbors(last) {
                if y > start && !path.contains(&y) {
                    path.push(y);
                    if grow(g, path, max_len, e, f) {
                        return true;
                    }
                    path.pop();
                }
            }
            false
        }
        (0..g.vertex_count()).any(|s| grow(g, &mut vec![s], max_len, e, f))
    }

    #[test]
    fn triangle_edges_share_a_three_cycle() {
        let w = cycle_through_edges(&triangle(), (0, 1), (1, 2), 3)
            .unwrap()
            .unwrap();
        assert_eq!(w.length, 3);
        assert_eq!(validate_witness(&triangle(), &w, 5), Ok(()));
    }

    #[test]
    fn long_cycle_needs_enough_budget() {
        let c9 = cycle_graph(9);
        assert_eq!(cycle_through_edges(&c9, (0, 1), (4, 5), 8).unwrap(), None);
        let w = cycle_through_edges(&c9, (0, 1), (4, 5), 9)
            .unwrap()
            .unwrap();
        assert_eq!(w.length, 9);
        let c8 = cycle_graph(8);
        assert!(cycle_through_edges(&c8, (0, 1), (4, 5), 8)
            .unwrap()
            .is_some());
    }

    #[test]
    fn eight_cycle_antipodal_and_k22() {
        let c8 = cycle_graph(8);
        let w = cycle_through_edges(&c8, (0, 1), (4, 5), 8)
            .unwrap()
            .unwrap();
        assert_eq!(w.cycle, (0..8).collect::<Vec<_>>());
        let k22 = Graph::from_edge_list(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let w = cycle_through_edges(&k22, (0, 2), (1, 3), 8)
            .unwrap()
            .unwrap();
        assert_eq!(w.length, 4);
    }

    #[test]
    fn path_has_no_cycle() {
        let p = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(cycle_through_edges(&p, (0, 1), (2, 3), 8).unwrap(), None);
    }

    #[test]
    fn rejects_bad_input() {
        let k4 = complete(4);
        assert_eq!(
            cycle_through_edges(&k4, (0, 1), (1, 0), 8),
            Err(ConnectError::SameEdge)
        );
        assert_eq!(
            cycle_through_edges(&k4, (0, 1), (2, 3), 2),
            Err(ConnectError::MaxLenTooSmall(2))
        );
        let p = Graph::from_edge_list(3, &[(0, 1)]).unwrap();
        assert_eq!(
            cycle_through_edges(&p, (0, 1), (1, 2), 8),
            Err(ConnectError::NotAnEdge(1, 2))
        );
    }

    #[test]
    fn disjoint_pair_uses_both_orientations() {
        // 0-1 and 2-3 sit on a 4-cycle 0,1,3,2 (crossed orientation only).
        let g = Graph::from_edge_list(4, &[(0, 1), (2, 3), (1, 3), (0, 2)]).unwrap();
        let w = cycle_through_edges(&g, (0, 1), (2, 3), 4).unwrap().unwrap();
        assert_eq!(validate_witness(&g, &w, 4), Ok(()));
    }

    #[test]
    fn searcher_reuse_is_consistent() {
        let g = complete(6);
        let mut s = CycleSearcher::new(&g);
        let edges: Vec<_> = g.edges().collect();
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let w = s
                    .find(edges[i], edges[j], 4)
                    .unwrap()
                    .expect("K6 has 4-cycles through any two edges");
                assert_eq!(validate_witness(&g, &w, 6), Ok(()));
            }
        }
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (4usize..10).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..(2 * n)).prop_map(move |pairs| {
                let pairs: Vec<_> = pairs.into_iter().filter(|(u, v)| u != v).collect();
                Graph::from_edge_list(n, &pairs).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force(g in arb_graph(), i in 0usize..64, j in 0usize..64, max_len in 3usize..9) {
            let edges: Vec<_> = g.edges().collect();
            prop_assume!(edges.len() >= 2);
            let (e, f) = (edges[i % edges.len()], edges[j % edges.len()]);
            prop_assume!(e != f);
            let found = cycle_through_edges(&g, e, f, max_len).unwrap();
            prop_assert_eq!(found.is_some(), brute_force(&g, e, f, max_len));
            if let Some(w) = &found {
                prop_assert!(w.length <= max_len);
                // The validator's sharing bound is two less than its argument.
                let arg = if w.pair.shares_vertex() { max_len + 2 } else { max_len };
                prop_assert_eq!(validate_witness(&g, w, arg), Ok(()));
            }
            let swapped = cycle_through_edges(&g, f, e, max_len).unwrap();
            prop_assert_eq!(found.is_some(), swapped.is_some());
            if found.is_some() {
                prop_assert!(cycle_through_edges(&g, e, f, max_len + 1).unwrap().is_some());
            }
        }
    }
}
