use serde::{Deserialize, Serialize};

use super::ExtractError;
use crate::connect::CertificateThresholds;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThresholdMode {
    /// Thresholds derived from `n` and `k` by the fixed formulas.
    Paper,
    /// Thresholds supplied by the caller.
    Custom,
}

/// How `k` was obtained when it was derived from a density exponent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KRounding {
    pub beta: f64,
    pub n: usize,
    /// `n^beta` as computed in floating point.
    pub approx: f64,
    /// `round(n^beta * 2^20) / 2^20`.
    pub k: Rational,
}

pub const K_ROUNDING_BITS: u32 = 20;

/// `k = round(n^beta * 2^20) / 2^20`.
pub fn k_from_beta(n: usize, beta: f64) -> Result<KRounding, ExtractError> {
    if !beta.is_finite() || beta <= 0.0 {
        return Err(ExtractError::InvalidThresholds(format!(
            "beta must be positive, got {beta}"
        )));
    }
    let approx = (n as f64).powf(beta);
    let scaled = (approx * f64::from(1u32 << K_ROUNDING_BITS)).round();
    if !scaled.is_finite() || !(1.0..=1e30).contains(&scaled) {
        return Err(ExtractError::InvalidThresholds(format!(
            "n^beta = {approx} is not usable as k"
        )));
    }
    let k = Rational::dyadic(scaled as u128, K_ROUNDING_BITS);
    Ok(KRounding { beta, n, approx, k })
}

/// The four pipeline thresholds, all exact.
///
/// Comparison conventions: peeling keeps degree `>= t_peel`; the auxiliary
/// graph joins codegree `>= t_codeg`; a vertex is bad when its degree is
/// `<= t_gamma_deg`; a B-vertex is pruned when it has `>= t_bad_per_vertex`
/// bad partners.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdSet {
    pub mode: ThresholdMode,
    pub n: usize,
    pub k: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_rounding: Option<KRounding>,
    pub t_peel: Rational,
    pub t_codeg: Rational,
    pub t_gamma_deg: Rational,
    pub t_bad_per_vertex: Rational,
}

fn frac(num: Rational, pow2: u32, k: &Rational, k_exp: u32) -> Rational {
    num / (Rational::from_integer(1u64 << pow2) * k.pow(k_exp))
}

impl ThresholdSet {
    /// Thresholds `n/(2k)`, `n/(32k²)`, `n/(2¹⁶k⁵)`, `n/(2⁷k²)`.
    pub fn paper(n: usize, k: Rational) -> Result<Self, ExtractError> {
        if !k.is_positive() {
            return Err(ExtractError::InvalidThresholds(format!(
                "k must be positive, got {k}"
            )));
        }
        let nr = Rational::from(n);
        Ok(ThresholdSet {
            mode: ThresholdMode::Paper,
            n,
            t_peel: frac(nr.clone(), 1, &k, 1),
            t_codeg: frac(nr.clone(), 5, &k, 2),
            t_gamma_deg: frac(nr.clone(), 16, &k, 5),
            t_bad_per_vertex: frac(nr, 7, &k, 2),
            k: Some(k),
            k_rounding: None,
        })
    }

    pub fn paper_from_beta(n: usize, beta: f64) -> Result<Self, ExtractError> {
        let rounding = k_from_beta(n, beta)?;
        let mut set = Self::paper(n, rounding.k.clone())?;
        set.k_rounding = Some(rounding);
        Ok(set)
    }

    pub fn custom(
        n: usize,
        t_peel: Rational,
        t_codeg: Rational,
        t_gamma_deg: Rational,
        t_bad_per_vertex: Rational,
    ) -> Result<Self, ExtractError> {
        let set = ThresholdSet {
            mode: ThresholdMode::Custom,
            n,
            k: None,
            k_rounding: None,
            t_peel,
            t_codeg,
            t_gamma_deg,
            t_bad_per_vertex,
        };
        set.validate()?;
        Ok(set)
    }

    pub fn validate(&self) -> Result<(), ExtractError> {
        for (name, t) in [
            ("t_peel", &self.t_peel),
            ("t_codeg", &self.t_codeg),
            ("t_gamma_deg", &self.t_gamma_deg),
            ("t_bad_per_vertex", &self.t_bad_per_vertex),
        ] {
            if !t.is_positive() {
                return Err(ExtractError::InvalidThresholds(format!(
                    "{name} must be positive, got {t}"
                )));
            }
        }
        Ok(())
    }

    fn paper_k(&self) -> Option<&Rational> {
        match self.mode {
            ThresholdMode::Paper => self.k.as_ref(),
            ThresholdMode::Custom => None,
        }
    }

    /// `2²⁰k⁵`; paper mode needs `n` strictly above it.
    pub fn paper_min_n(&self) -> Option<Rational> {
        self.paper_k()
            .map(|k| Rational::from_integer(1u64 << 20) * k.pow(5))
    }

    /// `n²/k`, the required input edge count in paper mode.
    pub fn paper_min_edges(&self) -> Option<Rational> {
        let n = Rational::from(self.n);
        self.paper_k().map(|k| &(&n * &n) / k)
    }

    /// `n/(2⁶k²)`: A′-degree floor and the bound on vertices pruned from B.
    pub fn paper_min_a_degree(&self) -> Option<Rational> {
        self.paper_k()
            .map(|k| frac(Rational::from(self.n), 6, k, 2))
    }

    /// `n²/(2⁶k²)`: edge floor for the extracted subgraph.
    pub fn paper_edge_bound(&self) -> Option<Rational> {
        let n = Rational::from(self.n);
        self.paper_k().map(|k| frac(&n * &n, 6, k, 2))
    }

    /// `n²/(2¹³k⁴)`: the pivot's guaranteed bad-pair ceiling.
    pub fn paper_bad_pair_bound(&self) -> Option<Rational> {
        let n = Rational::from(self.n);
        self.paper_k().map(|k| frac(&n * &n, 13, k, 4))
    }

    /// `n²/(2²⁴k⁷)`: paths of length three between any `a ∈ A′`, `b ∈ B′`.
    pub fn paper_path_bound(&self) -> Option<Rational> {
        let n = Rational::from(self.n);
        self.paper_k().map(|k| frac(&n * &n, 24, k, 7))
    }

    /// Thresholds for the connectivity certificate.
    ///
    /// Paper mode: `t1 = n/(2⁶k²)`, `t2 = n/(2⁷k²)`, `t3 = n/(2¹⁶k⁵)`.
    /// Custom mode: `t2 = t_bad_per_vertex`, `t3 = t_gamma_deg` and
    /// `t1 = t2 + 4`, the smallest `t1` the certificate margins admit.
    pub fn certificate_thresholds(&self) -> CertificateThresholds {
        match (self.mode, &self.k) {
            (ThresholdMode::Paper, Some(k)) => {
                let n = Rational::from(self.n);
                CertificateThresholds {
                    t1: frac(n.clone(), 6, k, 2),
                    t2: frac(n.clone(), 7, k, 2),
                    t3: frac(n, 16, k, 5),
                }
            }
            _ => CertificateThresholds {
                t1: &self.t_bad_per_vertex + &Rational::from(4u64),
                t2: self.t_bad_per_vertex.clone(),
                t3: self.t_gamma_deg.clone(),
            },
        }
    }
}
