//! Error type shared by every numerical operation in the crate.

use thiserror::Error;

/// Errors raised by matrix construction, decomposition, and propagation.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A matrix that must be Hermitian fails the symmetry check.
    #[error("matrix is not Hermitian: max |H - H^dag| entry = {max_asymmetry:.3e} (tolerance {tolerance:.3e})")]
    NotHermitian { max_asymmetry: f64, tolerance: f64 },

    /// A matrix that must be unitary fails the isometry check.
    #[error("matrix is not unitary: max |U^dag U - I| entry = {max_deviation:.3e} (tolerance {tolerance:.3e})")]
    NotUnitary { max_deviation: f64, tolerance: f64 },

    /// Operands with incompatible dimensions.
    #[error("dimension mismatch in {context}: {left} vs {right}")]
    DimMismatch {
        context: &'static str,
        left: usize,
        right: usize,
    },

    /// A builder received parameters outside its documented domain.
    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    /// No perfect-transfer time was found inside the search window.
    #[error("no perfect transfer found for N = {sites} within t in (0, {window:.6}]: best |amplitude| = {best:.12}")]
    NoTransfer {
        sites: usize,
        window: f64,
        best: f64,
    },

    /// Two consecutive trajectory samples are nearly orthogonal, so the
    /// pairwise-overlap phase estimator is undefined there.
    #[error("overlap breakdown in open-path estimator: |<psi_j|psi_j+1>| = {modulus:.3e} at step {step}")]
    OverlapBreakdown { step: usize, modulus: f64 },

    /// Zero vector where a normalizable state was required.
    #[error("cannot normalize a zero state vector")]
    ZeroState,
}

pub type Result<T> = std::result::Result<T, Error>;
