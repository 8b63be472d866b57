use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cycleweave_core::Rational;
use serde::Deserialize;

#[derive(Debug, Parser)]
#[command(
    name = "cycleweave",
    version,
    about = "Extract and verify strongly C8-connected subgraphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated instance as an edge list plus a metadata sidecar.
    Generate(GenerateArgs),
    /// Run the extraction pipeline, audit it and check the certificate.
    Extract(Box<ExtractArgs>),
    /// Exhaustively (or by sampling) check strong C8-connectivity.
    Verify(VerifyArgs),
    /// Re-check a saved trace against its input graph.
    Audit(AuditArgs),
}

#[derive(Debug, Args)]
pub struct OutputArg {
    /// Edge-list destination; stdout when absent (no sidecar is written then).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(subcommand)]
    pub family: Family,
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// Disjoint cliques of near-equal size.
    Cliques {
        #[arg(long)]
        n: usize,
        #[arg(long, required_unless_present = "beta", conflicts_with = "beta")]
        parts: Option<usize>,
        /// Use round(n^beta) parts.
        #[arg(long)]
        beta: Option<f64>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// G(n, p).
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: Rational,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Random bipartite graph, A = 0..a, B = a..a+b.
    Bipartite {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        p: Rational,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Complete bipartite graph.
    CompleteBipartite {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        /// Put A on even and B on odd ids.
        #[arg(long)]
        interleave: bool,
        #[command(flatten)]
        out: OutputArg,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Paper,
    Custom,
}

/// Extraction settings. Every field can also come from `--config`; flags win.
#[derive(Debug, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct ExtractSettings {
    /// Threshold mode; defaults to custom when any --t-* flag is given.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Paper mode: the density parameter k, as an integer, fraction or decimal.
    #[arg(long, conflicts_with = "beta")]
    pub k: Option<Rational>,
    /// Paper mode: k = n^beta, rounded to a multiple of 2^-20.
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub t_peel: Option<Rational>,
    #[arg(long)]
    pub t_codeg: Option<Rational>,
    #[arg(long)]
    pub t_gamma_deg: Option<Rational>,
    #[arg(long)]
    pub t_bad: Option<Rational>,
    /// Certificate A-degree floor (custom default: t2 + 4).
    #[arg(long)]
    pub t1: Option<Rational>,
    /// Certificate low-codegree partner limit (custom default: t-bad).
    #[arg(long)]
    pub t2: Option<Rational>,
    /// Certificate codegree floor (custom default: t-gamma-deg).
    #[arg(long)]
    pub t3: Option<Rational>,
    /// exhaustive | sampled:N
    #[arg(long)]
    pub pivot: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Also run the exhaustive verifier on G′.
    #[arg(long)]
    pub verify: bool,
    /// Pair selection for --verify: all | sample:N
    #[arg(long)]
    pub pairs: Option<String>,
    #[arg(long)]
    pub max_cycle: Option<usize>,
}

impl ExtractSettings {
    /// Fills unset fields from `base`.
    pub fn or(self, base: ExtractSettings) -> ExtractSettings {
        ExtractSettings {
            mode: self.mode.or(base.mode),
            k: self.k.or(base.k),
            beta: self.beta.or(base.beta),
            t_peel: self.t_peel.or(base.t_peel),
            t_codeg: self.t_codeg.or(base.t_codeg),
            t_gamma_deg: self.t_gamma_deg.or(base.t_gamma_deg),
            t_bad: self.t_bad.or(base.t_bad),
            t1: self.t1.or(base.t1),
            t2: self.t2.or(base.t2),
            t3: self.t3.or(base.t3),
            pivot: self.pivot.or(base.pivot),
            seed: self.seed.or(base.seed),
            verify: self.verify || base.verify,
            pairs: self.pairs.or(base.pairs),
            max_cycle: self.max_cycle.or(base.max_cycle),
        }
    }
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    /// G′ edge list, in input ids.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Run report (JSON); stdout when absent.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Pipeline trace (JSON), replayable with `audit`.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// TOML file with extraction settings.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Include wall-clock timings; reports are then no longer reproducible.
    #[arg(long)]
    pub timings: bool,
    #[command(flatten)]
    pub settings: ExtractSettings,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    /// Report destination; stdout when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = 8)]
    pub max_cycle: usize,
    /// all | sample:N
    #[arg(long, default_value = "all")]
    pub pairs: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// List a cycle for every passing pair.
    #[arg(long)]
    pub witnesses: bool,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(long)]
    pub trace: PathBuf,
    /// Report destination; stdout when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub t1: Option<Rational>,
    #[arg(long)]
    pub t2: Option<Rational>,
    #[arg(long)]
    pub t3: Option<Rational>,
}
