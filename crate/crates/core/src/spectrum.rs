//! Collective normal modes of the centre-of-mass coordinate coupled to the
//! cavity field.
//!
//! The normal frequencies `Ωr` are the roots of the secular equation
//!
//! ```text
//! F(Ω) = cot(RΩ) − Ω/(πg) − (1/(RΩ))·(1 − Rω0²/(πg)) = 0,
//! ```
//!
//! exactly one in each interval `(kπ/R, (k+1)π/R)`. Their overlaps with the
//! centre-of-mass coordinate give the spectral weights `(t0r)²`, which sum to
//! one over the full spectrum and decay like `η²/Ωr²`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Error, Result};
use crate::params::CavityParams;
use crate::roots::{brent, BracketError};

/// Half-width of the excluded band around each pole of `cot(RΩ)`, as a
/// fraction of the pole spacing `π/R`.
pub const POLE_GUARD: f64 = 1e-9;

/// Default relative tolerance on each root.
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;

/// Default truncation tolerance on the missing spectral weight.
pub const DEFAULT_TRUNCATION_EPS: f64 = 1e-6;

const MAX_ROOT_ITER: usize = 200;

/// Mixing denominators below this fraction of `max(ω_k², Ω²)` are rejected.
const RESONANCE_GUARD: f64 = 1e-12;

/// A bare cavity mode that couples to the atoms (`u_k(0) ≠ 0`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BareMode {
    pub k: usize,
    pub omega: f64,
    pub coupling: f64,
}

/// Modes `k = 1..=count`. The `k = 0` mode has zero frequency and zero
/// coupling and is left out.
pub fn bare_modes(params: &CavityParams, count: usize) -> Result<Vec<BareMode>> {
    params.validate()?;
    if count == 0 {
        return Err(Error::InvalidParameter("mode count must be at least 1".into()));
    }
    Ok((1..=count)
        .map(|k| BareMode {
            k,
            omega: params.bare_frequency(k),
            coupling: params.coupling(k),
        })
        .collect())
}

/// Secular function `F(Ω)`; its zeros are the normal frequencies.
pub fn secular_residual(params: &CavityParams, omega: f64) -> Result<f64> {
    ensure_positive("Omega", omega)?;
    let arg = params.radius * omega;
    let (sin, cos) = arg.sin_cos();
    let guard = (POLE_GUARD * PI).sin();
    if sin.abs() < guard {
        return Err(Error::PoleProximity {
            omega,
            sin_abs: sin.abs(),
        });
    }
    Ok(cos / sin - omega / (PI * params.g) - linear_term(params, omega))
}

fn linear_term(params: &CavityParams, omega: f64) -> f64 {
    let r = params.radius;
    (1.0 - r * params.omega0 * params.omega0 / (PI * params.g)) / (r * omega)
}

/// Secular function in the offset variable `x = RΩ − kπ ∈ (0, π)`.
///
/// Using the offset keeps `cot` exact for large `k`, where `RΩ` sits just
/// above a multiple of π.
fn secular_offset(params: &CavityParams, k: usize, x: f64) -> f64 {
    let omega = (k as f64 * PI + x) / params.radius;
    1.0 / x.tan() - omega / (PI * params.g) - linear_term(params, omega)
}

/// Smallest pole offsets tried when a root hides inside [`POLE_GUARD`]; the
/// upper side is limited by the spacing of doubles near π.
const MIN_LOWER_OFFSET: f64 = 1e-30;
const MIN_UPPER_OFFSET: f64 = 1e-14;

fn root_in_interval(params: &CavityParams, k: usize, tol: f64) -> Result<f64> {
    let band = POLE_GUARD * PI;
    let shift = k as f64 * PI;
    let f = |x: f64| secular_offset(params, k, x);

    // At weak coupling the roots crowd the poles, so the guard band is
    // narrowed until the endpoints straddle a sign change.
    let (mut lo_gap, mut hi_gap) = (band, band);
    let (mut f_lo, mut f_hi) = (f(lo_gap), f(PI - hi_gap));
    while f_lo < 0.0 && f_hi < 0.0 && lo_gap > MIN_LOWER_OFFSET {
        lo_gap *= 1e-4;
        f_lo = f(lo_gap);
    }
    while f_lo > 0.0 && f_hi > 0.0 && hi_gap > MIN_UPPER_OFFSET {
        hi_gap = (hi_gap * 1e-2).max(MIN_UPPER_OFFSET * 0.5);
        f_hi = f(PI - hi_gap);
    }
    let (lo, hi) = (lo_gap, PI - hi_gap);
    match brent(f, lo, hi, |x| tol * (shift + x), MAX_ROOT_ITER) {
        Ok(x) => Ok((shift + x) / params.radius),
        Err(BracketError::NoSignChange { f_lo, f_hi }) => Err(Error::BracketFailure {
            index: k,
            lo: (shift + lo) / params.radius,
            hi: (shift + hi) / params.radius,
            f_lo,
            f_hi,
        }),
        Err(BracketError::MaxIterations { last }) => Err(Error::RootNotConverged {
            index: k,
            last: (shift + last) / params.radius,
        }),
    }
}

fn roots_in_range(params: &CavityParams, range: std::ops::Range<usize>, tol: f64) -> Result<Vec<f64>> {
    range
        .into_par_iter()
        .map(|k| root_in_interval(params, k, tol))
        .collect()
}

/// Normal frequencies `Ω_0 < Ω_1 < … < Ω_{r_max}`, one per bracketing interval
/// `(kπ/R, (k+1)π/R)`, each to relative tolerance `tol`.
pub fn normal_mode_frequencies(params: &CavityParams, r_max: usize, tol: f64) -> Result<Vec<f64>> {
    params.validate()?;
    ensure_positive("tol", tol)?;
    roots_in_range(params, 0..r_max + 1, tol)
}

/// Spectral weight `(t0r)²` of a normal frequency.
pub fn spectral_weight(params: &CavityParams, omega_r: f64) -> f64 {
    let w0_sq = params.omega0 * params.omega0;
    let om_sq = omega_r * omega_r;
    let eta_sq = params.eta_sq();
    let pg = PI * params.g;
    let detuning = om_sq - w0_sq;
    eta_sq * om_sq / (detuning * detuning + 0.5 * eta_sq * (3.0 * om_sq - w0_sq) + pg * pg * om_sq)
}

/// Mixing coefficient `t_k^r = c_k/(Ω_r² − ω_k²) · t_0^r` with `t_0^r > 0`.
///
/// The sign follows from a coupling `+c_k q_k q0` in the Hamiltonian.
pub fn mixing_coefficient(params: &CavityParams, omega_r: f64, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidParameter("field mode index must be ≥ 1".into()));
    }
    let denominator = mixing_denominator(params, omega_r, k)?;
    Ok(params.coupling(k) / denominator * spectral_weight(params, omega_r).sqrt())
}

/// `Ω_r² − ω_k²`, rejected when nearly resonant.
pub(crate) fn mixing_denominator(params: &CavityParams, omega_r: f64, k: usize) -> Result<f64> {
    let wk = params.bare_frequency(k);
    let denominator = (omega_r - wk) * (omega_r + wk);
    if denominator.abs() < RESONANCE_GUARD * (wk * wk).max(omega_r * omega_r) {
        return Err(Error::NearResonance { k, denominator });
    }
    Ok(denominator)
}

/// Settings for [`ModeSpectrum::build`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumConfig {
    /// Largest admissible missing weight `1 − Σ(t0r)²`.
    pub truncation_eps: f64,
    /// Relative tolerance on each root.
    pub root_tol: f64,
    /// Hard cap on the number of roots.
    pub max_modes: usize,
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        Self {
            truncation_eps: DEFAULT_TRUNCATION_EPS,
            root_tol: DEFAULT_ROOT_TOL,
            max_modes: 50_000_000,
        }
    }
}

/// Truncated normal-mode spectrum with its spectral weights.
///
/// Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSpectrum {
    params: CavityParams,
    frequencies: Vec<f64>,
    weights: Vec<f64>,
    weight_sum: f64,
    tail_mass: f64,
    tail_estimate: f64,
    truncation_eps: Option<f64>,
    root_tol: f64,
}

impl ModeSpectrum {
    /// Extends the spectrum until the missing weight is below
    /// `cfg.truncation_eps`.
    pub fn build(params: CavityParams, cfg: &SpectrumConfig) -> Result<Self> {
        params.validate()?;
        ensure_positive("root_tol", cfg.root_tol)?;
        let eps = cfg.truncation_eps;
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "truncation_eps must lie in (0, 1), got {eps}"
            )));
        }

        // Σ_{r>n} η²/Ω_r² ≈ η²R²/(π²n) = 2gR/(πn)
        let estimate = 2.0 * params.g * params.radius / (PI * eps);
        let mut target = ((1.05 * estimate).ceil() as usize + 16).min(cfg.max_modes);

        let mut frequencies = Vec::new();
        loop {
            let next = roots_in_range(&params, frequencies.len()..target, cfg.root_tol)?;
            frequencies.extend(next);
            let spectrum = Self::from_frequencies(params, frequencies, cfg.root_tol, Some(eps));
            if spectrum.tail_mass < eps {
                return Ok(spectrum);
            }
            if target >= cfg.max_modes {
                return Err(Error::TruncationLimit {
                    modes: target,
                    tail_mass: spectrum.tail_mass,
                    eps,
                });
            }
            frequencies = spectrum.frequencies;
            target = (target + target / 4 + 64).min(cfg.max_modes);
        }
    }

    /// Spectrum with a fixed number of roots `r = 0..=r_max`.
    pub fn with_r_max(params: CavityParams, r_max: usize, root_tol: f64) -> Result<Self> {
        let frequencies = normal_mode_frequencies(&params, r_max, root_tol)?;
        Ok(Self::from_frequencies(params, frequencies, root_tol, None))
    }

    fn from_frequencies(
        params: CavityParams,
        frequencies: Vec<f64>,
        root_tol: f64,
        truncation_eps: Option<f64>,
    ) -> Self {
        let weights: Vec<f64> = frequencies.iter().map(|&om| spectral_weight(&params, om)).collect();
        let weight_sum = compensated_sum(weights.iter().rev().copied());
        let r_max = frequencies.len().saturating_sub(1);
        Self {
            params,
            weight_sum,
            tail_mass: (1.0 - weight_sum).max(0.0),
            tail_estimate: params.eta_sq() * params.radius * params.radius / (PI * PI * (r_max as f64 + 1.0)),
            frequencies,
            weights,
            truncation_eps,
            root_tol,
        }
    }

    pub fn params(&self) -> &CavityParams {
        &self.params
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Index of the highest retained root.
    pub fn r_max(&self) -> usize {
        self.frequencies.len() - 1
    }

    pub fn len(&self) -> usize {
        self.frequencies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequencies.is_empty()
    }

    /// `Σ_{r ≤ r_max} (t0r)²`.
    pub fn weight_sum(&self) -> f64 {
        self.weight_sum
    }

    /// Missing weight `1 − Σ(t0r)²`.
    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    /// Asymptotic estimate `Σ_{r > r_max} η²/Ω_r²` of the missing weight.
    pub fn tail_estimate(&self) -> f64 {
        self.tail_estimate
    }

    pub fn truncation_eps(&self) -> Option<f64> {
        self.truncation_eps
    }

    pub fn root_tol(&self) -> f64 {
        self.root_tol
    }

    /// `t_k^r` for every retained root.
    pub fn mixing_column(&self, k: usize) -> Result<Vec<f64>> {
        self.frequencies
            .iter()
            .map(|&om| mixing_coefficient(&self.params, om, k))
            .collect()
    }
}

/// Neumaier summation.
pub(crate) fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    sum + carry
}
