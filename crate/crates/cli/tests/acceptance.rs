//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//!
//! Oracles here are deliberately naive (direct enumeration over adjacency
//! lists) so they share no code paths with the bitset implementations.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use cycleweave_core::connect::{count_paths_len3, Edge};
use cycleweave_core::gen::{
    bipartite_random, complete_bipartite, disjoint_cliques, uniform_random,
};
use cycleweave_core::{
    build_witness, check_certificate, extract, validate_witness, verify_strong_c8, BipartiteGraph,
    CertificateThresholds, EdgePair, ExtractConfig, ExtractError, Graph, PairSelection,
    PipelineTrace, Rational, ThresholdSet, VertexId,
};

fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

fn rn(n: usize) -> Rational {
    Rational::from(n)
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn custom(
    n: usize,
    t_peel: Rational,
    t_codeg: Rational,
    t_gamma: Rational,
    t_bad: Rational,
) -> ThresholdSet {
    ThresholdSet::custom(n, t_peel, t_codeg, t_gamma, t_bad).expect("valid thresholds")
}

/// Whether `w` is bad for `{u, v}`, straight from the definition.
fn bad_oracle(
    h: &BipartiteGraph,
    gamma: &Graph,
    t_gamma: &Rational,
    w: VertexId,
    u: VertexId,
    v: VertexId,
) -> bool {
    let g = h.graph();
    if u == v || !g.has_edge(w, u) || !g.has_edge(w, v) {
        return false;
    }
    let wp = h.index_in_side(w).unwrap();
    let inside = g
        .neighbors(u)
        .iter()
        .filter(|&&z| z != w && g.has_edge(z, v) && gamma.has_edge(wp, h.index_in_side(z).unwrap()))
        .count();
    rn(inside) <= *t_gamma
}

fn bad_pairs_oracle(h: &BipartiteGraph, gamma: &Graph, t_gamma: &Rational, w: VertexId) -> u64 {
    let nb = h.neighbors(w);
    let mut count = 0;
    for i in 0..nb.len() {
        for j in i + 1..nb.len() {
            if bad_oracle(h, gamma, t_gamma, w, nb[i], nb[j]) {
                count += 1;
            }
        }
    }
    count
}

/// Stage invariants of one run; returns the violations found.
fn stage_violations(g: &Graph, t: &ThresholdSet, trace: &PipelineTrace) -> Vec<String> {
    let mut v = Vec::new();
    let sg = trace.graphs.as_ref().expect("recorded");
    let (g1, h, gamma) = (&sg.g1, &sg.h, &sg.gamma);
    if let Some(d) = g1.min_degree() {
        if rn(d) < t.t_peel {
            v.push(format!("min degree {d} < t_peel {}", t.t_peel));
        }
    }
    if rn(g1.edge_count()) < rn(g.edge_count()) - rn(g.vertex_count()) * t.t_peel.clone() {
        v.push(format!("e(G1) = {} below e(G) - n t_peel", g1.edge_count()));
    }
    for x in 0..g1.vertex_count() {
        if 2 * h.degree(x) < g1.degree(x).unwrap() {
            v.push(format!(
                "H-degree of {x} is {} < half of {}",
                h.degree(x),
                g1.degree(x).unwrap()
            ));
        }
    }
    if 2 * h.edge_count() < g1.edge_count() {
        v.push(format!("e(H) = {} < e(G1)/2", h.edge_count()));
    }
    let w = trace.pivot;
    let bp = trace.b_prime.as_slice();
    for &b in bp {
        if !h.graph().has_edge(w, b) {
            v.push(format!("B' vertex {b} not adjacent to pivot"));
        }
        let partners = bp
            .iter()
            .filter(|&&u| bad_oracle(h, gamma, &t.t_gamma_deg, w, u, b))
            .count();
        if rn(partners) >= t.t_bad_per_vertex {
            v.push(format!("B' vertex {b} keeps {partners} bad partners"));
        }
    }
    v
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let ps = [r("3/10"), r("1/2"), r("4/5")];
    let mut instances = Vec::new();
    for seed in 0..100u64 {
        let n = 20 + (seed as usize * 37) % 181;
        let p = &ps[seed as usize % 3];
        let g = uniform_random(n, p, seed).unwrap();
        let t = custom(
            n,
            rn(n) * p.clone() / r("4"),
            rn(n) / r("16"),
            rn(n) / r("32"),
            rn(n) / r("16"),
        );
        instances.push((format!("G({n}, {p}) seed {seed}"), g, t));
    }
    for i in 0..10 {
        let n = 30 + 17 * i;
        let g = disjoint_cliques(n, 1 + i % 4).unwrap();
        let t = custom(n, r("2"), r("2"), r("1"), r("3"));
        instances.push((format!("cliques({n}, {})", 1 + i % 4), g, t));
    }
    let mut violations = Vec::new();
    for (name, g, t) in &instances {
        match extract(g, &ExtractConfig::new(t.clone())) {
            Ok(out) => violations.extend(
                stage_violations(g, t, &out.trace)
                    .into_iter()
                    .map(|m| format!("{name}: {m}")),
            ),
            Err(e) => violations.push(format!("{name}: {e}")),
        }
    }
    let elapsed = start.elapsed();
    let pass = violations.is_empty() && elapsed < Duration::from_secs(120);
    for m in violations.iter().take(5) {
        println!("    {m}");
    }
    outcome(
        pass,
        format!(
            "{} instances, {} violations, {:.1} s",
            instances.len(),
            violations.len(),
            elapsed.as_secs_f64()
        ),
    )
}

struct Certified {
    name: String,
    gp: BipartiteGraph,
    th: CertificateThresholds,
}

fn certified_corpus() -> (Vec<Certified>, Vec<String>) {
    let mut corpus = Vec::new();
    let mut rejected = Vec::new();
    let fixed = CertificateThresholds {
        t1: r("5"),
        t2: r("1"),
        t3: r("5"),
    };
    for a in 5..=12 {
        for b in 5..=12 {
            let gp = complete_bipartite(a, b).unwrap();
            let name = format!("K{a},{b}");
            if check_certificate(&gp, &fixed).holds {
                corpus.push(Certified {
                    name,
                    gp,
                    th: fixed.clone(),
                });
            } else {
                rejected.push(name);
            }
        }
    }
    for seed in 0..12u64 {
        for (n, p) in [(24, "9/10"), (32, "9/10"), (40, "4/5")] {
            let g = uniform_random(n, &r(p), seed).unwrap();
            let t = custom(n, rn(n) / r("4"), r("5"), r("5"), r("2"));
            let Ok(out) = extract(&g, &ExtractConfig::new(t.clone())) else {
                continue;
            };
            let th = t.certificate_thresholds();
            if check_certificate(&out.g_prime, &th).holds {
                corpus.push(Certified {
                    name: format!("G'({n}, {p}) seed {seed}"),
                    gp: out.g_prime,
                    th,
                });
            }
        }
    }
    (corpus, rejected)
}

fn criterion_2(corpus: &[Certified], rejected: &[String]) -> Outcome {
    let mut failures = Vec::new();
    for c in corpus {
        let rep = verify_strong_c8(c.gp.graph(), &PairSelection::All);
        if !rep.strongly_c8 || !rep.exact {
            failures.push(format!("{}: {} failing pairs", c.name, rep.failures.len()));
        }
    }
    for m in failures.iter().take(5) {
        println!("    {m}");
    }
    outcome(
        failures.is_empty() && rejected.is_empty() && corpus.len() >= 50,
        format!(
            "{} certified instances, {} verifier failures, {} fixtures rejected by the certificate",
            corpus.len(),
            failures.len(),
            rejected.len()
        ),
    )
}

fn all_edge_pairs(g: &Graph) -> Vec<(Edge, Edge)> {
    let edges: Vec<Edge> = g.edges().collect();
    let mut out = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            out.push((edges[i], edges[j]));
        }
    }
    out
}

fn criterion_3(corpus: &[Certified]) -> Outcome {
    let mut problems = Vec::new();
    let mut checked = 0usize;
    for c in corpus {
        for (e, f) in all_edge_pairs(c.gp.graph()) {
            checked += 1;
            let pair = match EdgePair::oriented(&c.gp, e, f) {
                Ok(p) => p,
                Err(err) => {
                    problems.push(format!("{}: {e:?} {f:?}: {err}", c.name));
                    continue;
                }
            };
            match build_witness(&c.gp, &pair, &c.th) {
                Ok(w) => {
                    let limit = if pair.shares_vertex() { 6 } else { 8 };
                    if let Err(d) = validate_witness(c.gp.graph(), &w, 8) {
                        problems.push(format!("{}: {e:?} {f:?}: {d:?}", c.name));
                    } else if w.length > limit {
                        problems.push(format!(
                            "{}: {e:?} {f:?}: length {} > {limit}",
                            c.name, w.length
                        ));
                    }
                }
                Err(err) => problems.push(format!("{}: {e:?} {f:?}: {err}", c.name)),
            }
        }
    }
    for m in problems.iter().take(5) {
        println!("    {m}");
    }
    outcome(
        problems.is_empty(),
        format!("{checked} edge pairs, {} problems", problems.len()),
    )
}

fn criterion_4() -> Outcome {
    let mut problems = Vec::new();
    let mut varied = 0;
    for seed in 0..50u64 {
        let n = 30 + seed as usize;
        let g = uniform_random(n, &r("1/2"), 1000 + seed).unwrap();
        let t = custom(
            n,
            rn(n) / r("8"),
            rn(n) / r("8"),
            rn(n) / r("16"),
            rn(n) / r("16"),
        );
        let out = match extract(&g, &ExtractConfig::new(t.clone())) {
            Ok(o) => o,
            Err(e) => {
                problems.push(format!("seed {seed}: {e}"));
                continue;
            }
        };
        let tr = &out.trace;
        let sg = tr.graphs.as_ref().unwrap();
        let counts: Vec<(VertexId, u64)> =
            sg.h.side_a()
                .iter()
                .map(|w| (w, bad_pairs_oracle(&sg.h, &sg.gamma, &t.t_gamma_deg, w)))
                .collect();
        let (argmin, min) = counts.iter().copied().min_by_key(|&(w, c)| (c, w)).unwrap();
        let total: u64 = counts.iter().map(|&(_, c)| c).sum();
        let avg = Rational::new(total, counts.len()).unwrap();
        if counts.iter().any(|&(_, c)| c != min) {
            varied += 1;
        }
        if tr.pivot_bad_pairs != min || tr.pivot != argmin {
            problems.push(format!(
                "seed {seed}: pivot {} with {} bad pairs, oracle {argmin} with {min}",
                tr.pivot, tr.pivot_bad_pairs
            ));
        }
        if tr.bad_pair_avg != avg {
            problems.push(format!(
                "seed {seed}: average {} vs oracle {avg}",
                tr.bad_pair_avg
            ));
        }
        if rn(tr.pivot_bad_pairs as usize) > avg {
            problems.push(format!("seed {seed}: pivot count above average"));
        }
    }
    for m in problems.iter().take(5) {
        println!("    {m}");
    }
    outcome(
        problems.is_empty(),
        format!(
            "50 instances ({varied} with non-constant counts), {} mismatches",
            problems.len()
        ),
    )
}

fn paths3_oracle(gp: &BipartiteGraph, a: VertexId, b: VertexId) -> u64 {
    let g = gp.graph();
    let mut count = 0;
    for &x in g.neighbors(a) {
        if x == b {
            continue;
        }
        for &y in g.neighbors(x) {
            if y != a && g.has_edge(y, b) {
                count += 1;
            }
        }
    }
    count
}

fn criterion_5() -> Outcome {
    let mut mismatches = 0;
    let mut pairs = 0;
    for seed in 0..30u64 {
        let a = 5 + (seed as usize * 7) % 26;
        let b = 60 - a - (seed as usize % 5);
        let p = [r("1/5"), r("1/2"), r("4/5")][seed as usize % 3].clone();
        let gp = bipartite_random(a, b, &p, seed).unwrap();
        for &x in gp.side_a().as_slice() {
            for &y in gp.side_b().as_slice() {
                pairs += 1;
                if count_paths_len3(&gp, x, y).unwrap() != paths3_oracle(&gp, x, y) {
                    mismatches += 1;
                }
            }
        }
    }
    let k22 = count_paths_len3(&complete_bipartite(2, 2).unwrap(), 0, 2).unwrap();
    let k33 = count_paths_len3(&complete_bipartite(3, 3).unwrap(), 0, 3).unwrap();
    outcome(
        mismatches == 0 && k22 == 1 && k33 == 4,
        format!("{pairs} pairs on 30 graphs, {mismatches} mismatches; K2,2 = {k22}, K3,3 = {k33}"),
    )
}

fn criterion_6(corpus: &[Certified]) -> Outcome {
    let mut violations = Vec::new();
    let mut pairs = 0;
    for c in corpus {
        for &a in c.gp.side_a().as_slice() {
            let bound =
                (rn(c.gp.degree(a)) - c.th.t2.clone() - r("1")) * (c.th.t3.clone() - r("1"));
            for &b in c.gp.side_b().as_slice() {
                pairs += 1;
                let count = paths3_oracle(&c.gp, a, b);
                if rn(count as usize) < bound {
                    violations.push(format!("{}: ({a}, {b}) has {count} < {bound}", c.name));
                }
            }
        }
    }
    for m in violations.iter().take(5) {
        println!("    {m}");
    }
    outcome(
        violations.is_empty(),
        format!("{pairs} pairs, {} violations", violations.len()),
    )
}

fn criterion_7() -> Outcome {
    let g = disjoint_cliques(256, 4).unwrap();
    let t = custom(256, r("16"), r("8"), r("4"), r("4"));
    let out = match extract(&g, &ExtractConfig::new(t)) {
        Ok(o) => o,
        Err(e) => return outcome(false, format!("extraction failed: {e}")),
    };
    let pivot = out.trace.to_input(out.trace.pivot);
    let same = |u: VertexId, v: VertexId| u == v || g.has_edge(u, v);
    let gp = &out.g_prime;
    let verts: Vec<VertexId> = gp.side_a().iter().chain(gp.side_b().iter()).collect();
    let inside = verts.iter().all(|&v| same(v, pivot));
    let nonempty = !gp.side_a().is_empty() && !gp.side_b().is_empty();
    outcome(
        inside && nonempty,
        format!(
            "|A'| = {}, |B'| = {}, all inside the pivot's clique: {inside}",
            gp.side_a().len(),
            gp.side_b().len()
        ),
    )
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_cycleweave")
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>, String) {
    let out = Command::new(bin())
        .args(args)
        .env_remove("RUST_LOG")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        out.stdout,
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn criterion_8(dir: &Path) -> Outcome {
    let g = uniform_random(1000, &r("1/2"), 1).unwrap();
    let small = matches!(
        extract(
            &g,
            &ExtractConfig::new(ThresholdSet::paper(1000, r("2")).unwrap())
        ),
        Err(ExtractError::PaperModePreconditionViolated { .. })
    );
    let n = (1 << 20) + 1;
    let sparse = Graph::from_edge_list(n, &[(0, 1), (1, 2)]).unwrap();
    let few = matches!(
        extract(
            &sparse,
            &ExtractConfig::new(ThresholdSet::paper(n, r("1")).unwrap())
        ),
        Err(ExtractError::NotEnoughEdges { .. })
    );
    let path = dir.join("g1000.txt");
    let (gen, _, _) = run_cli(&[
        "generate",
        "random",
        "--n",
        "1000",
        "--p",
        "1/2",
        "--seed",
        "1",
        "-o",
        path.to_str().unwrap(),
    ]);
    let (code, _, err) = run_cli(&["extract", "-i", path.to_str().unwrap(), "--k", "2"]);
    let cli_ok = gen == 0 && code == 4 && err.contains("paper mode needs n >");
    outcome(
        small && few && cli_ok,
        format!("n=1000,k=2 rejected: {small}; sparse n=2^20+1 rejected for edges: {few}; CLI exit {code}"),
    )
}

fn criterion_9(dir: &Path) -> Outcome {
    let mut same = Vec::new();
    let p = |name: &str| dir.join(name).to_str().unwrap().to_string();
    for run in ["1", "2"] {
        let g = p(&format!("g{run}.txt"));
        run_cli(&[
            "generate", "random", "--n", "80", "--p", "7/10", "--seed", "11", "-o", &g,
        ]);
        run_cli(&[
            "extract",
            "-i",
            &p("g1.txt"),
            "--t-peel",
            "14",
            "--t-codeg",
            "5",
            "--t-gamma-deg",
            "5",
            "--t-bad",
            "2",
            "-o",
            &p(&format!("gp{run}.txt")),
            "--trace",
            &p(&format!("trace{run}.json")),
            "--report",
            &p(&format!("report{run}.json")),
        ]);
        run_cli(&[
            "verify",
            "-i",
            &p("gp1.txt"),
            "-o",
            &p(&format!("verify{run}.json")),
        ]);
    }
    let read = |name: &str| std::fs::read(dir.join(name)).unwrap_or_default();
    for (a, b) in [
        ("g1.txt", "g2.txt"),
        ("g1.txt.meta.json", "g2.txt.meta.json"),
        ("gp1.txt", "gp2.txt"),
        ("trace1.json", "trace2.json"),
        ("report1.json", "report2.json"),
        ("verify1.json", "verify2.json"),
    ] {
        let (x, y) = (read(a), read(b));
        same.push(!x.is_empty() && x == y);
        if x.is_empty() || x != y {
            println!("    {a} vs {b} differ");
        }
    }
    outcome(
        same.iter().all(|&s| s),
        format!(
            "{}/{} artifact pairs byte-identical",
            same.iter().filter(|&&s| s).count(),
            same.len()
        ),
    )
}

fn criterion_10() -> Outcome {
    let g = uniform_random(512, &r("1/2"), 5).unwrap();
    let t = custom(512, r("64"), r("32"), r("16"), r("32"));
    let start = Instant::now();
    let ok = extract(&g, &ExtractConfig::new(t)).is_ok();
    let extract_time = start.elapsed();

    let k = complete_bipartite(32, 32).unwrap();
    let start = Instant::now();
    let rep = verify_strong_c8(k.graph(), &PairSelection::All);
    let verify_time = start.elapsed();
    let limit = Duration::from_secs(60);
    outcome(
        ok && rep.strongly_c8 && extract_time < limit && verify_time < limit,
        format!(
            "extract n=512: {:.2} s; verify K32,32 ({} pairs): {:.2} s",
            extract_time.as_secs_f64(),
            rep.pairs_checked,
            verify_time.as_secs_f64()
        ),
    )
}

type Criterion<'a> = (usize, &'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let (corpus, rejected) = certified_corpus();
    let runs: Vec<Criterion> = vec![
        (1, "stage invariants", Box::new(criterion_1)),
        (
            2,
            "certificate soundness",
            Box::new(|| criterion_2(&corpus, &rejected)),
        ),
        (3, "witness constructor", Box::new(|| criterion_3(&corpus))),
        (4, "pivot derandomization", Box::new(criterion_4)),
        (5, "path-3 oracle", Box::new(criterion_5)),
        (6, "path-3 lower bound", Box::new(|| criterion_6(&corpus))),
        (7, "clique structure", Box::new(criterion_7)),
        (8, "paper-mode guard", Box::new(|| criterion_8(dir.path()))),
        (9, "determinism", Box::new(|| criterion_9(dir.path()))),
        (10, "performance", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (id, name, f) in runs {
        let o = f();
        println!(
            "criterion {id:>2} {} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
