//! Immutable simple graphs and two-sided (bipartite) views.
//!
//! Vertex ids are dense `0..n`. Adjacency lists are kept sorted, so every
//! iteration order in the crate is deterministic and codegrees are ordered
//! merges.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge #{index}: self-loop on vertex {vertex}")]
    SelfLoop { index: usize, vertex: VertexId },
    #[error("edge #{index}: vertex {vertex} out of range (n = {n})")]
    EdgeOutOfRange {
        index: usize,
        vertex: VertexId,
        n: usize,
    },
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("codegree needs two distinct vertices, got {0} twice")]
    SameVertex(VertexId),
    #[error("vertex {0} appears on both sides")]
    OverlappingSides(VertexId),
    #[error("vertex {vertex} is not on side {side}")]
    WrongSide { vertex: VertexId, side: Side },
    #[error("adjacency invariant broken at vertex {0}")]
    Corrupt(VertexId),
}

/// Sorted list of distinct vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<VertexId>", into = "Vec<VertexId>")]
pub struct VertexSet(Vec<VertexId>);

impl VertexSet {
    pub fn new(mut ids: Vec<VertexId>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        VertexSet(ids)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    /// `0..n`.
    pub fn range(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn into_vec(self) -> Vec<VertexId> {
        self.0
    }
}

impl From<Vec<VertexId>> for VertexSet {
    fn from(v: Vec<VertexId>) -> Self {
        VertexSet::new(v)
    }
}

impl From<VertexSet> for Vec<VertexId> {
    fn from(v: VertexSet) -> Self {
        v.0
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

/// Simple undirected graph with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<VertexId>>,
    edge_count: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.vertex_count())
            .field("m", &self.edge_count)
            .finish()
    }
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from unordered pairs, deduplicating repeats in either
    /// orientation. Errors name the index of the offending pair.
    pub fn from_edge_list(n: usize, pairs: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); n];
        for (index, &(u, v)) in pairs.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::EdgeOutOfRange {
                        index,
                        vertex: w,
                        n,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { index, vertex: u });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Ok(Self::from_raw_adjacency(adjacency))
    }

    /// Sorts and deduplicates each list. Caller guarantees symmetry and no loops.
    pub(crate) fn from_raw_adjacency(mut adjacency: Vec<Vec<VertexId>>) -> Self {
        let mut twice = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            twice += list.len();
        }
        Graph {
            adjacency,
            edge_count: twice / 2,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    fn check(&self, v: VertexId) -> Result<(), GraphError> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.vertex_count(),
            })
        }
    }

    pub fn degree(&self, v: VertexId) -> Result<usize, GraphError> {
        self.check(v)?;
        Ok(self.adjacency[v].len())
    }

    /// Sorted neighbors of `v`. Panics if `v` is out of range.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn common_neighbors(&self, u: VertexId, v: VertexId) -> Result<VertexSet, GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(GraphError::SameVertex(u));
        }
        let mut out = Vec::new();
        merge_intersect(&self.adjacency[u], &self.adjacency[v], |w| out.push(w));
        Ok(VertexSet(out))
    }

    /// `|N(u) ∩ N(v)|` without range or distinctness checks.
    pub fn codegree(&self, u: VertexId, v: VertexId) -> usize {
        let mut count = 0;
        merge_intersect(&self.adjacency[u], &self.adjacency[v], |_| count += 1);
        count
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.adjacency.iter().map(Vec::len).min()
    }

    /// Every edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn induced_subgraph(&self, vs: &VertexSet) -> Result<InducedSubgraph, GraphError> {
        if let Some(&last) = vs.as_slice().last() {
            self.check(last)?;
        }
        let mut from_parent = vec![None; self.vertex_count()];
        for (i, v) in vs.iter().enumerate() {
            from_parent[v] = Some(i);
        }
        let adjacency = vs
            .iter()
            .map(|v| {
                self.adjacency[v]
                    .iter()
                    .filter_map(|&w| from_parent[w])
                    .collect()
            })
            .collect();
        // `vs` is sorted, so the remap is monotone and lists stay sorted.
        let graph = Graph::from_raw_adjacency(adjacency);
        Ok(InducedSubgraph {
            graph,
            to_parent: vs.as_slice().to_vec(),
            from_parent,
        })
    }

    /// Full scan of the structural invariants.
    pub fn validate(&self) -> Result<(), GraphError> {
        let n = self.vertex_count();
        let mut twice = 0;
        for (u, list) in self.adjacency.iter().enumerate() {
            twice += list.len();
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(GraphError::Corrupt(u));
            }
            for &v in list {
                if v >= n || v == u || self.adjacency[v].binary_search(&u).is_err() {
                    return Err(GraphError::Corrupt(u));
                }
            }
        }
        if twice != 2 * self.edge_count {
            return Err(GraphError::Corrupt(0));
        }
        Ok(())
    }
}

pub(crate) fn merge_intersect(a: &[VertexId], b: &[VertexId], mut f: impl FnMut(VertexId)) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                f(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}

/// An induced subgraph together with its id remap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// Local id -> parent id (increasing).
    pub to_parent: Vec<VertexId>,
    /// Parent id -> local id.
    pub from_parent: Vec<Option<VertexId>>,
}

impl InducedSubgraph {
    pub fn parent_id(&self, local: VertexId) -> VertexId {
        self.to_parent[local]
    }

    pub fn local_id(&self, parent: VertexId) -> Option<VertexId> {
        self.from_parent.get(parent).copied().flatten()
    }

    pub fn lift(&self, set: &VertexSet) -> VertexSet {
        // Monotone remap keeps the set sorted.
        VertexSet(set.iter().map(|v| self.to_parent[v]).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

/// Two-sided graph `H = (A, B; E)` sharing the vertex id space of the graph
/// it was cut from. Vertices outside both sides are isolated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    graph: Graph,
    side_a: VertexSet,
    side_b: VertexSet,
    /// Per vertex: side and position within that side.
    placement: Vec<Option<(Side, usize)>>,
}

impl BipartiteGraph {
    /// Keeps exactly the cross edges of `g` between `side_a` and `side_b`,
    /// without reorienting the sides.
    pub fn from_sides(g: &Graph, side_a: VertexSet, side_b: VertexSet) -> Result<Self, GraphError> {
        let n = g.vertex_count();
        let mut placement = vec![None; n];
        for (side, set) in [(Side::A, &side_a), (Side::B, &side_b)] {
            for (i, v) in set.iter().enumerate() {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
                if placement[v].is_some() {
                    return Err(GraphError::OverlappingSides(v));
                }
                placement[v] = Some((side, i));
            }
        }
        let side_of = |v: VertexId| placement[v].map(|(s, _)| s);
        let adjacency = (0..n)
            .map(|u| match side_of(u) {
                None => Vec::new(),
                Some(su) => g
                    .neighbors(u)
                    .iter()
                    .copied()
                    .filter(|&v| side_of(v).is_some_and(|sv| sv != su))
                    .collect(),
            })
            .collect();
        let graph = Graph::from_raw_adjacency(adjacency);
        Ok(BipartiteGraph {
            graph,
            side_a,
            side_b,
            placement,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn side_a(&self) -> &VertexSet {
        &self.side_a
    }

    pub fn side_b(&self) -> &VertexSet {
        &self.side_b
    }

    pub fn side_of(&self, v: VertexId) -> Option<Side> {
        self.placement.get(v).copied().flatten().map(|(s, _)| s)
    }

    /// Position of `v` within its own side.
    pub fn index_in_side(&self, v: VertexId) -> Option<usize> {
        self.placement.get(v).copied().flatten().map(|(_, i)| i)
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.graph.neighbors(v).len()
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        self.graph.neighbors(v)
    }

    pub fn codegree(&self, u: VertexId, v: VertexId) -> usize {
        self.graph.codegree(u, v)
    }

    /// Edges as `(a, b)` with `a` on side A, sorted.
    pub fn oriented_edges(&self) -> Vec<(VertexId, VertexId)> {
        self.side_a
            .iter()
            .flat_map(|a| self.graph.neighbors(a).iter().map(move |&b| (a, b)))
            .collect()
    }

    pub fn require_side(&self, v: VertexId, side: Side) -> Result<(), GraphError> {
        if self.side_of(v) == Some(side) {
            Ok(())
        } else {
            Err(GraphError::WrongSide { vertex: v, side })
        }
    }

    /// Subgraph induced by `a ∪ b`, with `a ⊆ A` and `b ⊆ B` keeping their roles.
    pub fn restrict(&self, a: VertexSet, b: VertexSet) -> Result<Self, GraphError> {
        for v in a.iter() {
            self.require_side(v, Side::A)?;
        }
        for v in b.iter() {
            self.require_side(v, Side::B)?;
        }
        BipartiteGraph::from_sides(&self.graph, a, b)
    }

    fn swapped(self) -> Self {
        let placement = self
            .placement
            .into_iter()
            .map(|p| {
                p.map(|(s, i)| match s {
                    Side::A => (Side::B, i),
                    Side::B => (Side::A, i),
                })
            })
            .collect();
        BipartiteGraph {
            graph: self.graph,
            side_a: self.side_b,
            side_b: self.side_a,
            placement,
        }
    }

    /// Reorients so that `|B| <= |A|`; ties keep the current orientation.
    pub fn normalized(self) -> Self {
        if self.side_b.len() > self.side_a.len() {
            self.swapped()
        } else {
            self
        }
    }
}

/// Cross-edge view of `g` with the sides oriented so that `|B| <= |A|`.
pub fn bipartite_view(
    g: &Graph,
    side_a: VertexSet,
    side_b: VertexSet,
) -> Result<BipartiteGraph, GraphError> {
    Ok(BipartiteGraph::from_sides(g, side_a, side_b)?.normalized())
}
