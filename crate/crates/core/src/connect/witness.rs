use super::{CertificateThresholds, ConnectError, CycleWitness, EdgePair, PairRelation};
use crate::graph::{BipartiteGraph, Side, VertexId};

struct Picker<'a> {
    gp: &'a BipartiteGraph,
    t3: i128,
}

impl Picker<'_> {
    fn first(
        &self,
        step: &'static str,
        candidates: &[VertexId],
        avoid: &[VertexId],
        ok: impl Fn(VertexId) -> bool,
    ) -> Result<VertexId, ConnectError> {
        candidates
            .iter()
            .copied()
            .find(|v| !avoid.contains(v) && ok(*v))
            .ok_or(ConnectError::SelectionExhausted { step })
    }

    fn common(&self, x: VertexId, y: VertexId) -> Vec<VertexId> {
        let mut out = Vec::new();
        crate::graph::merge_intersect(self.gp.neighbors(x), self.gp.neighbors(y), |v| out.push(v));
        out
    }

    fn dense(&self, x: VertexId, y: VertexId) -> bool {
        self.gp.codegree(x, y) as i128 >= self.t3
    }
}

/// Builds a short cycle through the two edges of `pair`, taking the
/// smallest-id candidate at every choice. When the certificate holds for
/// `th`, every choice has a candidate; `SelectionExhausted` otherwise.
///
/// Disjoint edges get a cycle of length 8, edges sharing a vertex one of
/// length 6.
pub fn build_witness(
    gp: &BipartiteGraph,
    pair: &EdgePair,
    th: &CertificateThresholds,
) -> Result<CycleWitness, ConnectError> {
    let pair = EdgePair::oriented(gp, pair.e, pair.f)?;
    for (a, b) in [pair.e, pair.f] {
        gp.require_side(a, Side::A)?;
        gp.require_side(b, Side::B)?;
    }
    let p = Picker {
        gp,
        t3: th.t3.ceil_i128(),
    };
    let cycle = match pair.relation {
        PairRelation::Disjoint => {
            let ((a, b), (ap, bp)) = (pair.e, pair.f);
            let b1 = p.first("b1", gp.neighbors(a), &[b, bp], |x| p.dense(x, bp))?;
            let a1 = p.first("a1", &p.common(b1, bp), &[a, ap], |_| true)?;
            let b2 = p.first("b2", gp.neighbors(ap), &[b, bp, b1], |x| p.dense(x, b))?;
            let a2 = p.first("a2", &p.common(b, b2), &[a, ap, a1], |_| true)?;
            vec![a, b1, a1, bp, ap, b2, a2, b]
        }
        PairRelation::ShareA => {
            let (a, b) = pair.e;
            let bp = pair.f.1;
            let a1 = p.first("a1", gp.neighbors(b), &[a], |_| true)?;
            let b1 = p.first("b1", gp.neighbors(a1), &[b, bp], |x| p.dense(x, bp))?;
            let a2 = p.first("a2", &p.common(bp, b1), &[a, a1], |_| true)?;
            vec![a, b, a1, b1, a2, bp]
        }
        PairRelation::ShareB => {
            let (a, b) = pair.e;
            let ap = pair.f.0;
            let b1 = p.first("b1", gp.neighbors(a), &[b], |_| true)?;
            let b2 = p.first("b2", gp.neighbors(ap), &[b, b1], |x| p.dense(b1, x))?;
            let a2 = p.first("a2", &p.common(b1, b2), &[a, ap], |_| true)?;
            vec![a, b, ap, b2, a2, b1]
        }
    };
    Ok(CycleWitness::new(pair, cycle))
}
