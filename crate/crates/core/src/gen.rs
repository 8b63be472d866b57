//! Seeded graph generators.
//!
//! Random families use `ChaCha8Rng::seed_from_u64(seed)` and visit candidate
//! edges in lexicographic order, drawing one `u64` per candidate. An edge is
//! kept iff `x * den < num * 2^64` for `p = num/den`, so the output for a
//! given seed is fixed across platforms.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{BipartiteGraph, Graph, GraphError, VertexId, VertexSet};
use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("probability must lie in [0, 1] with numerator and denominator below 2^64, got {0}")]
    InvalidProbability(String),
    #[error("{0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

struct Coin {
    num: u128,
    den: u128,
    rng: ChaCha8Rng,
}

impl Coin {
    fn new(p: &Rational, seed: u64) -> Result<Self, GenError> {
        let bad = || GenError::InvalidProbability(p.to_string());
        if p.is_negative() || *p > Rational::one() {
            return Err(bad());
        }
        let (num, den) = p.to_u64_pair().ok_or_else(bad)?;
        Ok(Coin {
            num: num.into(),
            den: den.into(),
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    fn flip(&mut self) -> bool {
        u128::from(self.rng.next_u64()) * self.den < self.num << 64
    }
}

/// `parts` disjoint cliques covering `0..n`, consecutive ids, larger cliques first.
pub fn disjoint_cliques(n: usize, parts: usize) -> Result<Graph, GenError> {
    if parts == 0 || parts > n {
        return Err(GenError::InvalidParameter(format!(
            "need 1 <= parts <= n, got parts = {parts}, n = {n}"
        )));
    }
    let mut edges = Vec::new();
    let mut start = 0;
    for i in 0..parts {
        let size = n / parts + usize::from(i < n % parts);
        for u in start..start + size {
            edges.extend((u + 1..start + size).map(|v| (u, v)));
        }
        start += size;
    }
    Ok(Graph::from_edge_list(n, &edges)?)
}

/// Number of cliques giving edge density about `n^-beta`.
pub fn parts_for_beta(n: usize, beta: f64) -> usize {
    ((n as f64).powf(beta).round() as usize).clamp(1, n.max(1))
}

/// Erdős–Rényi `G(n, p)`.
pub fn uniform_random(n: usize, p: &Rational, seed: u64) -> Result<Graph, GenError> {
    if n == 0 {
        return Err(GenError::InvalidParameter("n must be at least 1".into()));
    }
    let mut coin = Coin::new(p, seed)?;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if coin.flip() {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edge_list(n, &edges)?)
}

/// Random bipartite graph with `A = 0..a` and `B = a..a+b`.
pub fn bipartite_random(
    a: usize,
    b: usize,
    p: &Rational,
    seed: u64,
) -> Result<BipartiteGraph, GenError> {
    let mut coin = Coin::new(p, seed)?;
    let mut edges = Vec::new();
    for u in 0..a {
        for v in a..a + b {
            if coin.flip() {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::from_edge_list(a + b, &edges)?;
    Ok(BipartiteGraph::from_sides(
        &g,
        VertexSet::range(a),
        (a..a + b).collect(),
    )?)
}

fn complete_on(a_ids: Vec<VertexId>, b_ids: Vec<VertexId>) -> Result<BipartiteGraph, GenError> {
    let n = a_ids.len() + b_ids.len();
    let edges: Vec<_> = a_ids
        .iter()
        .flat_map(|&u| b_ids.iter().map(move |&v| (u, v)))
        .collect();
    let g = Graph::from_edge_list(n, &edges)?;
    Ok(BipartiteGraph::from_sides(&g, a_ids.into(), b_ids.into())?)
}

fn check_sides(a: usize, b: usize) -> Result<(), GenError> {
    if a == 0 || b == 0 {
        return Err(GenError::InvalidParameter(format!(
            "both sides need a vertex, got {a} and {b}"
        )));
    }
    Ok(())
}

/// `K_{a,b}` with `A = 0..a` and `B = a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<BipartiteGraph, GenError> {
    check_sides(a, b)?;
    complete_on((0..a).collect(), (a..a + b).collect())
}

/// `K_{a,b}` with interleaved ids: A takes the even and B the odd ids of
/// `0..2·min(a,b)`, and the larger side takes the remaining ids.
pub fn complete_bipartite_interleaved(a: usize, b: usize) -> Result<BipartiteGraph, GenError> {
    check_sides(a, b)?;
    let m = a.min(b);
    let mut a_ids: Vec<_> = (0..m).map(|i| 2 * i).collect();
    let mut b_ids: Vec<_> = (0..m).map(|i| 2 * i + 1).collect();
    a_ids.extend(2 * m..2 * m + (a - m));
    b_ids.extend(2 * m..2 * m + (b - m));
    complete_on(a_ids, b_ids)
}

/// A generator invocation, recorded next to its output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GenSpec {
    Cliques {
        n: usize,
        parts: usize,
        /// Set when `parts` came from [`parts_for_beta`].
        #[serde(default, skip_serializing_if = "Option::is_none")]
        beta: Option<f64>,
    },
    Random {
        n: usize,
        p: Rational,
        seed: u64,
    },
    Bipartite {
        a: usize,
        b: usize,
        p: Rational,
        seed: u64,
    },
    CompleteBipartite {
        a: usize,
        b: usize,
        interleaved: bool,
    },
}

impl GenSpec {
    pub fn generate(&self) -> Result<Graph, GenError> {
        Ok(match self {
            GenSpec::Cliques { n, parts, .. } => disjoint_cliques(*n, *parts)?,
            GenSpec::Random { n, p, seed } => uniform_random(*n, p, *seed)?,
            GenSpec::Bipartite { a, b, p, seed } => {
                bipartite_random(*a, *b, p, *seed)?.graph().clone()
            }
            GenSpec::CompleteBipartite {
                a,
                b,
                interleaved: false,
            } => complete_bipartite(*a, *b)?.graph().clone(),
            GenSpec::CompleteBipartite {
                a,
                b,
                interleaved: true,
            } => complete_bipartite_interleaved(*a, *b)?.graph().clone(),
        })
    }
}

pub const GEN_FORMAT: &str = "cycleweave-gen/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenMetadata {
    pub format: String,
    pub spec: GenSpec,
    pub vertices: usize,
    pub edges: usize,
}

impl GenMetadata {
    pub fn new(spec: GenSpec, g: &Graph) -> Self {
        GenMetadata {
            format: GEN_FORMAT.to_string(),
            spec,
            vertices: g.vertex_count(),
            edges: g.edge_count(),
        }
    }
}
