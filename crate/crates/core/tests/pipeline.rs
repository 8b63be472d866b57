use cycleweave_core::gen::{bipartite_random, complete_bipartite_interleaved, uniform_random};
use cycleweave_core::{
    audit_trace, canonical_json, check_certificate, extract, parse_edge_list, replay_trace,
    verify_strong_c8, BipartiteGraph, ExtractConfig, PairSelection, PivotStrategy, Rational,
    ThresholdSet,
};
use proptest::prelude::*;

fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

fn dense_thresholds(n: usize) -> ThresholdSet {
    ThresholdSet::custom(n, Rational::from(n) / r("4"), r("5"), r("5"), r("2")).unwrap()
}

#[test]
fn edge_list_round_trip() {
    let g = uniform_random(30, &r("1/3"), 4).unwrap();
    let text = cycleweave_core::edgelist::format_edge_list(&g);
    let back = parse_edge_list(&text).unwrap();
    assert!(back.warnings.is_empty());
    assert_eq!(
        back.graph.edges().collect::<Vec<_>>(),
        g.edges().collect::<Vec<_>>()
    );
}

#[test]
fn extraction_is_deterministic() {
    let g = uniform_random(60, &r("7/10"), 3).unwrap();
    let cfg = ExtractConfig::new(dense_thresholds(60));
    let a = extract(&g, &cfg).unwrap();
    let b = extract(&g, &cfg).unwrap();
    assert_eq!(a.g_prime, b.g_prime);
    assert_eq!(
        canonical_json(&a.trace.document(false)).unwrap(),
        canonical_json(&b.trace.document(false)).unwrap()
    );
}

#[test]
fn sampled_pivot_is_seeded() {
    let g = uniform_random(50, &r("1/2"), 8).unwrap();
    let mut cfg = ExtractConfig::new(dense_thresholds(50));
    cfg.pivot_strategy = PivotStrategy::Sampled { count: 5, seed: 17 };
    let a = extract(&g, &cfg).unwrap();
    let b = extract(&g, &cfg).unwrap();
    assert_eq!(a.trace.pivot, b.trace.pivot);
    assert_eq!(a.trace.pivot_evaluations, 5);
    let exhaustive = extract(&g, &ExtractConfig::new(dense_thresholds(50))).unwrap();
    assert!(exhaustive.trace.pivot_bad_pairs <= a.trace.pivot_bad_pairs);
}

#[test]
fn replayed_trace_audits_identically() {
    let g = uniform_random(45, &r("4/5"), 6).unwrap();
    let out = extract(&g, &ExtractConfig::new(dense_thresholds(45))).unwrap();
    let doc = out.trace.document(false);
    let json = canonical_json(&doc).unwrap();
    let parsed = serde_json::from_str(&json).unwrap();
    let replayed = replay_trace(&g, &parsed).unwrap();
    let direct = audit_trace(&out.trace).unwrap();
    let again = audit_trace(&replayed).unwrap();
    assert_eq!(
        canonical_json(&direct).unwrap(),
        canonical_json(&again).unwrap()
    );
    assert!(direct.unconditional_ok());
}

#[test]
fn replay_rejects_other_graph() {
    let g = uniform_random(45, &r("4/5"), 6).unwrap();
    let other = uniform_random(45, &r("4/5"), 7).unwrap();
    let out = extract(&g, &ExtractConfig::new(dense_thresholds(45))).unwrap();
    assert!(replay_trace(&other, &out.trace.document(false)).is_err());
}

#[test]
fn interleaved_k66_certifies_end_to_end() {
    let g = complete_bipartite_interleaved(6, 6).unwrap();
    let t = ThresholdSet::custom(12, r("1"), r("1"), r("1/2"), r("10")).unwrap();
    let out = extract(g.graph(), &ExtractConfig::new(t)).unwrap();
    let th = cycleweave_core::CertificateThresholds {
        t1: r("5"),
        t2: r("1"),
        t3: r("5"),
    };
    assert!(check_certificate(&out.g_prime, &th).holds);
    assert!(verify_strong_c8(out.g_prime.graph(), &PairSelection::All).strongly_c8);
}

fn arb_dense_bipartite() -> impl Strategy<Value = BipartiteGraph> {
    (5usize..12, 5usize..12, 6u64..11, any::<u64>()).prop_map(|(a, b, tenths, seed)| {
        bipartite_random(a, b, &Rational::new(tenths, 10u64).unwrap(), seed).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Soundness of the certificate: whenever it holds, no pair of edges fails.
    #[test]
    fn certificate_implies_strong_connectivity(gp in arb_dense_bipartite(), t2 in 1u32..3) {
        let th = cycleweave_core::CertificateThresholds {
            t1: Rational::from(u64::from(t2) + 4),
            t2: Rational::from(u64::from(t2)),
            t3: r("5"),
        };
        if check_certificate(&gp, &th).holds {
            let rep = verify_strong_c8(gp.graph(), &PairSelection::All);
            prop_assert!(rep.strongly_c8, "{:?}", rep.failures);
        }
    }

    #[test]
    fn extraction_output_is_inside_h(seed in any::<u64>(), n in 20usize..60) {
        let g = uniform_random(n, &r("7/10"), seed).unwrap();
        if let Ok(out) = extract(&g, &ExtractConfig::new(dense_thresholds(n))) {
            let gp = &out.g_prime;
            for (u, v) in gp.graph().edges() {
                prop_assert!(g.has_edge(u, v));
                prop_assert!(gp.side_a().contains(u) != gp.side_a().contains(v));
            }
            prop_assert!(audit_trace(&out.trace).unwrap().unconditional_ok());
        }
    }
}
