use serde::{Deserialize, Serialize};

use crate::extract::gamma;
use crate::graph::BipartiteGraph;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateThresholds {
    pub t1: Rational,
    pub t2: Rational,
    pub t3: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub holds: bool,
    pub thresholds: CertificateThresholds,
    /// Every A-vertex has degree at least `t1`.
    pub min_degree_ok: bool,
    /// Every B-vertex has fewer than `t2` partners of codegree below `t3`.
    pub low_codegree_ok: bool,
    /// `t3 >= 5` and `t1 - t2 >= 4`.
    pub margins_ok: bool,
    /// `|B| >= t2`.
    pub b_size_ok: bool,
    pub measured_min_a_degree: Option<usize>,
    /// Largest number of partners with codegree below `t3` over B.
    pub measured_max_bad_partners: Option<usize>,
    pub measured_b_size: usize,
    pub failure_reasons: Vec<String>,
}

/// Low-codegree partner count of every B-vertex: partners `u != v` in B
/// with `codeg(u, v) < t3`.
pub(crate) fn low_partner_counts(gp: &BipartiteGraph, t3: &Rational) -> Vec<usize> {
    let cutoff = t3.ceil_i128();
    let b = gp.side_b().as_slice();
    let rows = gamma::rows(b.len(), gp.side_a().len(), |i, row| {
        for &a in gp.neighbors(b[i]) {
            row.insert(gp.index_in_side(a).expect("cross edge"));
        }
    });
    (0..b.len())
        .map(|i| {
            (0..b.len())
                .filter(|&j| j != i && (gamma::and_count(&rows[i], &rows[j]) as i128) < cutoff)
                .count()
        })
        .collect()
}

/// Checks the sufficient condition for strong C8-connectivity on a
/// bipartite graph. Passing it proves the property; failing proves nothing.
pub fn check_certificate(gp: &BipartiteGraph, th: &CertificateThresholds) -> CertificateReport {
    let mut reasons = Vec::new();

    let min_a = gp.side_a().iter().map(|a| gp.degree(a)).min();
    let min_degree_ok = gp
        .side_a()
        .iter()
        .all(|a| th.t1.cmp_count(gp.degree(a) as u64).is_ge());
    if !min_degree_ok {
        reasons.push(format!(
            "minimum A-degree {} is below t1 = {}",
            min_a.unwrap_or(0),
            th.t1
        ));
    }

    let low = low_partner_counts(gp, &th.t3);
    let max_low = low.iter().copied().max();
    let low_codegree_ok = low.iter().all(|&c| th.t2.cmp_count(c as u64).is_lt());
    if !low_codegree_ok {
        let (i, c) = low
            .iter()
            .enumerate()
            .find(|(_, &c)| th.t2.cmp_count(c as u64).is_ge())
            .expect("some count fails");
        reasons.push(format!(
            "B-vertex {} has {c} partners with codegree below t3 = {}, needs fewer than t2 = {}",
            gp.side_b().as_slice()[i],
            th.t3,
            th.t2
        ));
    }

    let five = Rational::from(5u64);
    let four = Rational::from(4u64);
    let margins_ok = th.t3 >= five && &th.t1 - &th.t2 >= four;
    if !margins_ok {
        reasons.push(format!(
            "margins need t3 >= 5 and t1 - t2 >= 4; have t3 = {}, t1 - t2 = {}",
            th.t3,
            &th.t1 - &th.t2
        ));
    }

    let b_size = gp.side_b().len();
    let b_size_ok = th.t2.cmp_count(b_size as u64).is_ge();
    if !b_size_ok {
        reasons.push(format!("|B| = {b_size} is below t2 = {}", th.t2));
    }

    CertificateReport {
        holds: min_degree_ok && low_codegree_ok && margins_ok && b_size_ok,
        thresholds: th.clone(),
        min_degree_ok,
        low_codegree_ok,
        margins_ok,
        b_size_ok,
        measured_min_a_degree: min_a,
        measured_max_bad_partners: max_low,
        measured_b_size: b_size,
        failure_reasons: reasons,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::complete_bipartite;
    use crate::graph::VertexSet;

    fn th(t1: u64, t2: u64, t3: u64) -> CertificateThresholds {
        CertificateThresholds {
            t1: t1.into(),
            t2: t2.into(),
            t3: t3.into(),
        }
    }

    #[test]
    fn k55_meets_tight_thresholds() {
        let k = complete_bipartite(5, 5).unwrap();
        let r = check_certificate(&k, &th(5, 1, 5));
        assert!(r.holds, "{:?}", r.failure_reasons);
        assert_eq!(r.measured_min_a_degree, Some(5));
        assert_eq!(r.measured_max_bad_partners, Some(0));
    }

    #[test]
    fn each_clause_can_fail_alone() {
        let k = complete_bipartite(5, 5).unwrap();
        let r = check_certificate(&k, &th(6, 1, 5));
        assert!(!r.holds && !r.min_degree_ok && r.low_codegree_ok && r.margins_ok && r.b_size_ok);

        // K4,5 (one A-vertex removed): codegree 4 < 5 between every B pair.
        let k45 = k
            .restrict(VertexSet::range(4), VertexSet::new((5..10).collect()))
            .unwrap();
        let r = check_certificate(&k45, &th(4, 1, 5));
        assert!(!r.low_codegree_ok && r.min_degree_ok);
        assert_eq!(r.measured_max_bad_partners, Some(4));

        let r = check_certificate(&k, &th(5, 2, 5));
        assert!(!r.margins_ok && r.min_degree_ok && r.low_codegree_ok);
        let r = check_certificate(&k, &th(5, 1, 4));
        assert!(!r.margins_ok);
        // t3 = 6 exceeds every codegree of 5.
        let r = check_certificate(&k, &th(5, 1, 6));
        assert!(!r.low_codegree_ok && r.margins_ok);
        assert_eq!(r.measured_max_bad_partners, Some(4));

        let k95 = complete_bipartite(9, 5).unwrap();
        let r = check_certificate(&k95, &th(10, 6, 5));
        assert!(!r.b_size_ok);
        assert_eq!(r.failure_reasons.len(), 2);
    }

    #[test]
    fn empty_b_side_fails_size_clause() {
        let k = complete_bipartite(3, 3).unwrap();
        let empty = k.restrict(VertexSet::range(3), VertexSet::empty()).unwrap();
        let r = check_certificate(&empty, &th(5, 1, 5));
        assert!(!r.b_size_ok && !r.holds);
    }
}
