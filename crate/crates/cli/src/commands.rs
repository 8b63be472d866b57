use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use cycleweave_core::connect::verify_path3_bound;
use cycleweave_core::edgelist::{format_edge_list, ParsedEdgeList};
use cycleweave_core::extract::{audit_trace, replay_trace, TraceDocument};
use cycleweave_core::gen::{parts_for_beta, GenMetadata, GenSpec};
use cycleweave_core::{
    canonical_json, check_certificate, extract, read_edge_list, verify_strongly_connected,
    BipartiteGraph, CertificateThresholds, ExtractConfig, PairSelection, PivotStrategy, Rational,
    ThresholdSet, VerifyOptions, VertexSet,
};
use serde::Serialize;

use crate::args::{
    AuditArgs, ExtractArgs, ExtractSettings, Family, GenerateArgs, ModeArg, VerifyArgs,
};
use crate::failure::{Failure, EXIT_CERTIFICATE, EXIT_NO_INPUT, EXIT_OK, EXIT_VERIFY};
use crate::report::{ConfigEcho, GPrimeSummary, InputSummary, RunReport};

fn write_text(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::write(p, e)),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::write(Path::new("<stdout>"), e))
        }
    }
}

fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<(), Failure> {
    let text = canonical_json(value)
        .map_err(|e| Failure::data(format!("cannot serialize report: {e}")))?;
    write_text(path, &text)
}

fn read_input(path: &Path) -> Result<(ParsedEdgeList, InputSummary), Failure> {
    let parsed = read_edge_list(path).map_err(|e| Failure::read(path, e))?;
    let summary = InputSummary {
        path: path.display().to_string(),
        vertices: parsed.graph.vertex_count(),
        edges: parsed.graph.edge_count(),
        warnings: parsed.warnings.clone(),
    };
    Ok((parsed, summary))
}

fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

pub fn generate(args: GenerateArgs) -> Result<i32, Failure> {
    let (spec, out) = match args.family {
        Family::Cliques {
            n,
            parts,
            beta,
            out,
        } => {
            let parts = match (parts, beta) {
                (Some(p), _) => p,
                (None, Some(b)) if b.is_finite() && b >= 0.0 => parts_for_beta(n, b),
                (None, b) => {
                    return Err(Failure::usage(format!(
                        "--beta must be a non-negative number, got {b:?}"
                    )))
                }
            };
            (GenSpec::Cliques { n, parts, beta }, out)
        }
        Family::Random { n, p, seed, out } => (GenSpec::Random { n, p, seed }, out),
        Family::Bipartite { a, b, p, seed, out } => (GenSpec::Bipartite { a, b, p, seed }, out),
        Family::CompleteBipartite {
            a,
            b,
            interleave,
            out,
        } => (
            GenSpec::CompleteBipartite {
                a,
                b,
                interleaved: interleave,
            },
            out,
        ),
    };
    let g = spec.generate().map_err(|e| Failure::usage(e.to_string()))?;
    let path = out.output.as_deref();
    write_text(path, &format_edge_list(&g))?;
    if let Some(p) = path {
        write_json(Some(&sidecar_path(p)), &GenMetadata::new(spec, &g))?;
    }
    log::info!(
        "generated {} vertices, {} edges",
        g.vertex_count(),
        g.edge_count()
    );
    Ok(EXIT_OK)
}

fn load_settings(args: &mut ExtractArgs) -> Result<ExtractSettings, Failure> {
    let flags = std::mem::take(&mut args.settings);
    let Some(path) = &args.config else {
        return Ok(flags);
    };
    let text = fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_NO_INPUT,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    let file: ExtractSettings =
        toml::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    Ok(flags.or(file))
}

fn thresholds(s: &ExtractSettings, n: usize) -> Result<ThresholdSet, Failure> {
    let customs = [&s.t_peel, &s.t_codeg, &s.t_gamma_deg, &s.t_bad];
    let mode = s.mode.unwrap_or(if customs.iter().any(|t| t.is_some()) {
        ModeArg::Custom
    } else {
        ModeArg::Paper
    });
    match mode {
        ModeArg::Paper => {
            if customs.iter().any(|t| t.is_some()) {
                return Err(Failure::usage(
                    "--t-peel/--t-codeg/--t-gamma-deg/--t-bad need --mode custom",
                ));
            }
            Ok(match (&s.k, s.beta) {
                (Some(k), None) => ThresholdSet::paper(n, k.clone())?,
                (None, Some(beta)) => ThresholdSet::paper_from_beta(n, beta)?,
                _ => {
                    return Err(Failure::usage(
                        "paper mode needs exactly one of --k and --beta",
                    ))
                }
            })
        }
        ModeArg::Custom => {
            let need = |t: &Option<Rational>, flag: &str| {
                t.clone()
                    .ok_or_else(|| Failure::usage(format!("custom mode needs {flag}")))
            };
            Ok(ThresholdSet::custom(
                n,
                need(&s.t_peel, "--t-peel")?,
                need(&s.t_codeg, "--t-codeg")?,
                need(&s.t_gamma_deg, "--t-gamma-deg")?,
                need(&s.t_bad, "--t-bad")?,
            )?)
        }
    }
}

fn certificate_thresholds(
    base: CertificateThresholds,
    t1: &Option<Rational>,
    t2: &Option<Rational>,
    t3: &Option<Rational>,
) -> CertificateThresholds {
    CertificateThresholds {
        t1: t1.clone().unwrap_or(base.t1),
        t2: t2.clone().unwrap_or(base.t2),
        t3: t3.clone().unwrap_or(base.t3),
    }
}

pub fn extract_cmd(mut args: ExtractArgs) -> Result<i32, Failure> {
    let settings = load_settings(&mut args)?;
    let (parsed, input) = read_input(&args.input)?;
    let g = parsed.graph;

    let t = thresholds(&settings, g.vertex_count())?;
    let cert_t = certificate_thresholds(
        t.certificate_thresholds(),
        &settings.t1,
        &settings.t2,
        &settings.t3,
    );
    let seed = settings.seed.unwrap_or(0);
    let pivot = PivotStrategy::parse(settings.pivot.as_deref().unwrap_or("exhaustive"), seed)
        .map_err(Failure::usage)?;
    let verify = if settings.verify {
        let pairs = PairSelection::parse(settings.pairs.as_deref().unwrap_or("all"), seed)
            .map_err(Failure::usage)?;
        Some(VerifyOptions {
            pairs,
            max_cycle: settings.max_cycle.unwrap_or(8),
            collect_witnesses: false,
        })
    } else {
        None
    };

    let cfg = ExtractConfig {
        thresholds: t.clone(),
        pivot_strategy: pivot.clone(),
        record_trace: true,
    };
    let out = extract(&g, &cfg)?;
    let audit = audit_trace(&out.trace)?;
    let gp = &out.g_prime;
    let certificate = check_certificate(gp, &cert_t);
    let path3 = verify_path3_bound(gp, &cert_t.t2, &cert_t.t3, t.paper_path_bound().as_ref());
    let connectivity = verify
        .as_ref()
        .map(|opts| verify_strongly_connected(gp.graph(), opts));

    log::info!(
        "G' has |A'| = {}, |B'| = {}, {} edges; certificate {}",
        gp.side_a().len(),
        gp.side_b().len(),
        gp.edge_count(),
        if certificate.holds { "holds" } else { "fails" }
    );
    for reason in &certificate.failure_reasons {
        log::warn!("certificate: {reason}");
    }

    let code = if certificate.holds {
        EXIT_OK
    } else {
        EXIT_CERTIFICATE
    };
    let mut report = RunReport::new("extract", input);
    report.config = Some(ConfigEcho {
        thresholds: t,
        certificate_thresholds: cert_t,
        pivot_strategy: pivot,
        verify,
    });
    report.audit = Some(audit);
    report.certificate = Some(certificate);
    report.path3 = Some(path3.into());
    report.connectivity = connectivity;
    report.g_prime = Some(GPrimeSummary::of(gp));
    if args.timings {
        report.timings_ms = Some(
            out.trace
                .timings
                .iter()
                .map(|s| (s.stage.clone(), s.millis))
                .collect(),
        );
    }
    report.exit_code = code;

    if let Some(p) = &args.output {
        write_text(Some(p), &format_edge_list(gp.graph()))?;
    }
    if let Some(p) = &args.trace {
        write_json(Some(p), &out.trace.document(args.timings))?;
    }
    write_json(args.report.as_deref(), &report)?;
    Ok(code)
}

pub fn verify_cmd(args: VerifyArgs) -> Result<i32, Failure> {
    let (parsed, input) = read_input(&args.input)?;
    let pairs = PairSelection::parse(&args.pairs, args.seed).map_err(Failure::usage)?;
    if args.max_cycle < 3 {
        return Err(Failure::usage(format!(
            "--max-cycle must be at least 3, got {}",
            args.max_cycle
        )));
    }
    let opts = VerifyOptions {
        pairs,
        max_cycle: args.max_cycle,
        collect_witnesses: args.witnesses,
    };
    let connectivity = verify_strongly_connected(&parsed.graph, &opts);
    let code = if connectivity.strongly_c8 {
        EXIT_OK
    } else {
        EXIT_VERIFY
    };
    log::info!(
        "{} pairs checked, {} failures",
        connectivity.pairs_checked,
        connectivity.failures.len()
    );
    let mut report = RunReport::new("verify", input);
    report.connectivity = Some(connectivity);
    report.exit_code = code;
    write_json(args.output.as_deref(), &report)?;
    Ok(code)
}

pub fn audit_cmd(args: AuditArgs) -> Result<i32, Failure> {
    let (parsed, input) = read_input(&args.input)?;
    let text = fs::read_to_string(&args.trace).map_err(|e| Failure {
        code: EXIT_NO_INPUT,
        message: format!("cannot read {}: {e}", args.trace.display()),
    })?;
    let doc: TraceDocument = serde_json::from_str(&text)
        .map_err(|e| Failure::data(format!("{}: {e}", args.trace.display())))?;
    let trace = replay_trace(&parsed.graph, &doc)?;
    let audit = audit_trace(&trace)?;
    let t = &trace.thresholds;
    let cert_t = certificate_thresholds(t.certificate_thresholds(), &args.t1, &args.t2, &args.t3);
    let gp = BipartiteGraph::from_sides(
        &parsed.graph,
        VertexSet::new(trace.lift(&trace.a_prime)),
        VertexSet::new(trace.lift(&trace.b_prime)),
    )
    .map_err(|e| Failure::data(e.to_string()))?;
    let certificate = check_certificate(&gp, &cert_t);
    let path3 = verify_path3_bound(&gp, &cert_t.t2, &cert_t.t3, t.paper_path_bound().as_ref());

    let ok = audit.unconditional_ok() && certificate.holds;
    let code = if ok { EXIT_OK } else { EXIT_CERTIFICATE };
    let mut report = RunReport::new("audit", input);
    report.config = Some(ConfigEcho {
        thresholds: t.clone(),
        certificate_thresholds: cert_t,
        pivot_strategy: trace.pivot_strategy.clone(),
        verify: None,
    });
    report.audit = Some(audit);
    report.certificate = Some(certificate);
    report.path3 = Some(path3.into());
    report.g_prime = Some(GPrimeSummary::of(&gp));
    report.exit_code = code;
    write_json(args.output.as_deref(), &report)?;
    Ok(code)
}
