//! Assembles certification runs into one serializable report: claimed
//! integers, kernel certificates, the numeric spectrum where the matrix is
//! symmetric, gap and expansion bounds, and a multiplicity table.

use crate::cayley::{CayleyGraph, GeneratorChoice, DEFAULT_VERTEX_CAP};
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::partition::{lift_eigenpair, position_partition};
use crate::reversal::Variant;
use crate::spectra::certify::{
    certify_against, claim_matrix, claim_window, claimed_integer_spectrum, CertificateKind,
    EigenCertificate,
};
use crate::spectra::{cheeger_bounds, jacobi, spectral_gap};
use num_bigint::BigInt;
use serde::Serialize;
use std::collections::BTreeMap;
use std::time::Instant;

/// Tolerance for matching numeric eigenvalues to integers when counting
/// multiplicities on a full graph.
const NUMERIC_MATCH_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Work on the summed reversal matrix itself (mn rows).
    Quotient,
    /// Build the graph, lift every certificate through the position
    /// partition, and verify against the full adjacency matrix.
    Full,
}

impl Scope {
    pub fn as_str(self) -> &'static str {
        match self {
            Scope::Quotient => "quotient",
            Scope::Full => "full",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "quotient" => Ok(Scope::Quotient),
            "full" => Ok(Scope::Full),
            other => Err(Error::Parse(format!("unknown scope '{other}'"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    /// Include kernel vectors (as decimal strings) in the serialized form.
    pub with_vectors: bool,
    pub seed: u64,
    /// Upper bound on the graph order for full-scope reports.
    pub vertex_cap: u128,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            with_vectors: false,
            seed: 0,
            vertex_cap: DEFAULT_VERTEX_CAP,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportParams {
    pub m: u32,
    pub n: usize,
    pub variant: String,
    pub scope: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateEntry {
    pub lambda: i64,
    pub kind: String,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vector: Option<Vec<String>>,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub params: ReportParams,
    pub claimed: Vec<i64>,
    pub certificates: Vec<CertificateEntry>,
    /// Full numeric spectrum, descending; absent for asymmetric matrices.
    pub spectrum: Option<Vec<f64>>,
    pub gap: Option<f64>,
    pub cheeger: Option<[f64; 2]>,
    pub multiplicities: BTreeMap<i64, u64>,
    pub runtime_ms: u128,
}

impl SpectrumReport {
    pub fn all_certified(&self) -> bool {
        self.certificates.iter().all(|c| c.verified)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn regular_degree(m: u32, n: usize, variant: Variant) -> u64 {
    match m {
        1 => n as u64 - 1,
        2 => n as u64,
        _ => match variant {
            Variant::Undirected => 2 * n as u64,
            Variant::Directed => n as u64,
        },
    }
}

fn entry_from(cert: &EigenCertificate, with_vectors: bool) -> CertificateEntry {
    CertificateEntry {
        lambda: cert.lambda,
        kind: cert.kind.as_str().into(),
        verified: cert.verified,
        vector: if with_vectors {
            cert.vector
                .as_ref()
                .map(|v| v.iter().map(BigInt::to_string).collect())
        } else {
            None
        },
        residual: cert.residual,
    }
}

fn numeric_multiplicities(spectrum: &[f64], lo: i64, hi: i64) -> BTreeMap<i64, u64> {
    (lo..=hi)
        .map(|k| {
            let count = spectrum
                .iter()
                .filter(|&&x| (x - k as f64).abs() <= NUMERIC_MATCH_TOLERANCE)
                .count() as u64;
            (k, count)
        })
        .collect()
}

fn exact_multiplicities(
    matrix: &ExactMatrix,
    lo: i64,
    hi: i64,
    seed: u64,
) -> Result<BTreeMap<i64, u64>> {
    crate::spectra::certify::integer_multiplicities(matrix, lo, hi, seed)
}

/// Runs the certification pipeline for one parameter point and packages
/// the evidence. Quotient scope certifies against the summed reversal
/// matrix; full scope additionally builds the graph, lifts every kernel
/// vector through the position partition, and re-verifies it against the
/// adjacency matrix, so the certificates in a full report witness
/// eigenvalues of the graph itself.
pub fn build_report(
    m: u32,
    n: usize,
    variant: Variant,
    scope: Scope,
    opts: &ReportOptions,
) -> Result<SpectrumReport> {
    let started = Instant::now();
    let claimed = claimed_integer_spectrum(m, n, variant)?;
    let (lo, hi) = claim_window(m, n, variant)?;
    let quotient = claim_matrix(m, n, variant)?;
    let quotient_certs = certify_against(&quotient, &claimed, opts.seed)?;
    let d = regular_degree(m, n, variant);

    let (certificates, spectrum, multiplicities) = match scope {
        Scope::Quotient => {
            let spectrum = if quotient.is_symmetric() {
                Some(jacobi::eigenvalues(&quotient)?)
            } else {
                None
            };
            let multiplicities = exact_multiplicities(&quotient, lo, hi, opts.seed)?;
            let certificates = quotient_certs
                .iter()
                .map(|c| entry_from(c, opts.with_vectors))
                .collect();
            (certificates, spectrum, multiplicities)
        }
        Scope::Full => {
            let choice = if m <= 2 {
                GeneratorChoice::Classical
            } else {
                GeneratorChoice::Standard(variant)
            };
            let graph = CayleyGraph::build_with(m, n, choice, opts.vertex_cap)?;
            let partition = position_partition(&graph)?;
            let mut certificates = Vec::with_capacity(quotient_certs.len());
            for cert in &quotient_certs {
                let lifted = match (&cert.vector, cert.verified) {
                    (Some(v), true) => lift_eigenpair(&graph, &partition, cert.lambda, v)?.ok(),
                    _ => None,
                };
                let verified = lifted.is_some();
                certificates.push(entry_from(
                    &EigenCertificate {
                        lambda: cert.lambda,
                        kind: CertificateKind::ExactKernel,
                        verified,
                        vector: lifted,
                        residual: 0.0,
                    },
                    opts.with_vectors,
                ));
            }
            let adjacency = graph.adjacency_matrix();
            let spectrum = if graph.is_directed() {
                None
            } else {
                Some(jacobi::eigenvalues(&adjacency)?)
            };
            let multiplicities = match &spectrum {
                Some(s) => numeric_multiplicities(s, lo, hi),
                None => exact_multiplicities(&adjacency, lo, hi, opts.seed)?,
            };
            (certificates, spectrum, multiplicities)
        }
    };

    let (gap, cheeger) = match &spectrum {
        Some(s) => {
            let gap = spectral_gap(s, d)?;
            let (lo_b, hi_b) = cheeger_bounds(d as f64, s[1])?;
            (Some(gap), Some([lo_b, hi_b]))
        }
        None => (None, None),
    };

    Ok(SpectrumReport {
        params: ReportParams {
            m,
            n,
            variant: variant.as_str().into(),
            scope: scope.as_str().into(),
        },
        claimed,
        certificates,
        spectrum,
        gap,
        cheeger,
        multiplicities,
        runtime_ms: started.elapsed().as_millis(),
    })
}
