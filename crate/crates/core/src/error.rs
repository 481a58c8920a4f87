use thiserror::Error;

/// Failures raised by the spectral, quadrature and entanglement routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// `cot(RΩ)` evaluated too close to one of its poles.
    #[error("Ω = {omega} lies within the pole guard of cot(RΩ) (|sin(RΩ)| = {sin_abs:e})")]
    PoleProximity { omega: f64, sin_abs: f64 },

    /// No sign change between the guard-banded ends of a bracketing interval.
    #[error("no sign change in bracketing interval {index}: F({lo}) = {f_lo:e}, F({hi}) = {f_hi:e}")]
    BracketFailure {
        index: usize,
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("root iteration did not converge in interval {index} (last estimate {last})")]
    RootNotConverged { index: usize, last: f64 },

    /// A mixing denominator `Ω_r² − ω_k²` fell below the resonance guard.
    #[error("near-resonant denominator Ω² − ω_k² = {denominator:e} for mode k = {k}")]
    NearResonance { k: usize, denominator: f64 },

    #[error("truncation stopped at {modes} modes with tail mass {tail_mass:e} above the requested {eps:e}")]
    TruncationLimit { modes: usize, tail_mass: f64, eps: f64 },

    #[error("quadrature did not converge: {reason}")]
    QuadratureNotConverged { reason: String },

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),

    /// The finite-N quadratic form was not positive definite.
    #[error("non-positive eigenvalue {value:e} at index {index} of the oscillator quadratic form")]
    NonPositiveEigenvalue { index: usize, value: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} must be positive and finite, got {value}"
        )))
    }
}
