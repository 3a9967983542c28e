//! Spectral verification: claimed integer eigenvalues with exact kernel
//! certificates, closed-form eigenvector audits, a dense Jacobi solver for
//! full numeric spectra, and gap/expansion bounds derived from them.

pub mod certify;
pub mod families;
pub mod jacobi;
pub mod report;

pub use certify::{
    certify_against, certify_claimed, claim_matrix, claim_window, claimed_integer_spectrum,
    classical_flip_sum, integer_multiplicities, verify_eigenpair, CertificateKind,
    EigenCertificate,
};
pub use families::{
    audit_families, claimed_pair, instances, AuditStatus, FamilyAudit, FamilyInstance,
    FamilyKind, FamilyOutcome,
};
pub use report::{build_report, ReportOptions, Scope, SpectrumReport};

use crate::error::{Error, Result};

/// Slack allowed between the numeric top eigenvalue and the exact degree.
pub const DEGREE_MATCH_TOLERANCE: f64 = 1e-8;

/// Difference between the degree and the second-largest eigenvalue of a
/// regular graph. `spectrum` must be sorted descending with its top entry
/// within [`DEGREE_MATCH_TOLERANCE`] of `d`; anything else indicates the
/// spectrum belongs to a different matrix than the caller thinks.
pub fn spectral_gap(spectrum: &[f64], d: u64) -> Result<f64> {
    if spectrum.len() < 2 {
        return Err(Error::InvalidParameter(
            "a spectral gap needs at least two eigenvalues".into(),
        ));
    }
    if spectrum.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidParameter(
            "spectrum must be sorted descending".into(),
        ));
    }
    let top = spectrum[0];
    if (top - d as f64).abs() > DEGREE_MATCH_TOLERANCE {
        return Err(Error::InvalidParameter(format!(
            "top eigenvalue {top} does not match degree {d}"
        )));
    }
    Ok(top - spectrum[1])
}

/// Cheeger-style bounds on the edge expansion of a d-regular graph with
/// second eigenvalue `lambda2`: the constant lies in
/// [(d - lambda2)/2, sqrt(2 d (d - lambda2))].
pub fn cheeger_bounds(d: f64, lambda2: f64) -> Result<(f64, f64)> {
    if !d.is_finite() || !lambda2.is_finite() {
        return Err(Error::InvalidParameter(
            "degree and eigenvalue must be finite".into(),
        ));
    }
    if lambda2 > d + DEGREE_MATCH_TOLERANCE {
        return Err(Error::InvalidParameter(format!(
            "lambda2 = {lambda2} exceeds the degree {d}"
        )));
    }
    let diff = (d - lambda2).max(0.0);
    Ok((diff / 2.0, (2.0 * d * diff).sqrt()))
}
