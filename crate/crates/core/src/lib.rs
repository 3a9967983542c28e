//! Exact spectral toolkit for prefix-reversal graphs of colored
//! permutations.
//!
//! The crate builds the Cayley graphs of colored permutation groups under
//! prefix reversals (flips raise colors, flops lower them), their
//! generator-sum matrices in closed circulant-block form, and the quotient
//! matrices induced by tracking a single decorated symbol. Spectral claims
//! about these graphs are certified with exact integer kernel vectors;
//! floating point is confined to a Jacobi eigensolver used for whole
//! spectra and gap estimates.

pub mod cayley;
pub mod circulant;
pub mod colored;
pub mod error;
pub mod exact;
pub mod matrix;
pub mod partition;
pub mod reversal;
pub mod spectra;

pub use colored::{ColoredPermutation, PrefixReversal, ReversalSign};
pub use error::{Error, Result};
pub use matrix::ExactMatrix;
pub use reversal::Variant;
