//! Physical configuration in natural units (ħ = c = 1).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Result};

/// Atomic frequency, coupling constant and cavity radius.
///
/// Frequencies are in units of `omega0` when it is normalised to 1; the radius
/// is measured in inverse frequency units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CavityParams {
    pub omega0: f64,
    pub g: f64,
    pub radius: f64,
}

impl CavityParams {
    pub fn new(omega0: f64, g: f64, radius: f64) -> Result<Self> {
        let params = Self { omega0, g, radius };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("omega0", self.omega0)?;
        ensure_positive("g", self.g)?;
        ensure_positive("radius", self.radius)
    }

    /// Bare mode spacing `Δω = π/R`.
    pub fn mode_spacing(&self) -> f64 {
        PI / self.radius
    }

    /// `η² = 2gΔω`, the squared ratio `c_k/ω_k`.
    pub fn eta_sq(&self) -> f64 {
        2.0 * self.g * self.mode_spacing()
    }

    /// Frequency of bare field mode `k` (k ≥ 1).
    pub fn bare_frequency(&self, k: usize) -> f64 {
        PI * k as f64 / self.radius
    }

    /// Atom-field coupling of bare mode `k`: `c_k = η ω_k`.
    pub fn coupling(&self, k: usize) -> f64 {
        self.eta_sq().sqrt() * self.bare_frequency(k)
    }
}
