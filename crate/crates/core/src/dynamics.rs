//! Time-evolution coefficients and one-excitation probability amplitudes.
//!
//! Amplitudes are defined up to the common phase `e^{−iE0 t}` of the ground
//! state energy, which diverges with truncation and cancels in every modulus.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::{compensated_sum, mixing_denominator, ModeSpectrum};

pub type ComplexAmplitude = Complex64;

/// Anything that can supply the survival coefficient `f00(t)`.
pub trait AmplitudeSource: Sync {
    fn omega0(&self) -> f64;

    fn f00(&self, t: f64) -> Result<Complex64>;

    /// `f00` on an arbitrary set of times.
    fn f00_at(&self, times: &[f64]) -> Result<Vec<Complex64>> {
        times.par_iter().map(|&t| self.f00(t)).collect()
    }

    /// `f00` on a uniform grid; sources may override with a faster scheme.
    fn f00_grid(&self, grid: &TimeGrid) -> Result<Vec<Complex64>> {
        self.f00_at(&grid.times())
    }
}

/// Uniform time grid `start + i·step`, `i = 0..count`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub start: f64,
    pub step: f64,
    pub count: usize,
}

impl TimeGrid {
    /// Grid from `start` to `end` inclusive. When `end − start` is not a
    /// multiple of `step` the last point is the largest one not past `end`.
    pub fn inclusive(start: f64, end: f64, step: f64) -> Result<Self> {
        if !(start.is_finite() && end.is_finite() && end >= start) {
            return Err(Error::InvalidParameter(format!(
                "time window [{start}, {end}] is not a finite ordered interval"
            )));
        }
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "time step must be positive, got {step}"
            )));
        }
        let intervals = ((end - start) / step * (1.0 + 1e-12)).floor() as usize;
        Ok(Self {
            start,
            step,
            count: intervals + 1,
        })
    }

    pub fn at(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.at(i)).collect()
    }
}

/// Survival coefficient `f00(t) = Σ_r (t0r)² e^{−iΩr t}` over the retained
/// roots. The truncation error is bounded by the spectrum's tail mass.
pub fn f00(spectrum: &ModeSpectrum, t: f64) -> Complex64 {
    let mut re = 0.0;
    let mut im = 0.0;
    for (&om, &w) in spectrum.frequencies().iter().zip(spectrum.weights()).rev() {
        let (s, c) = (om * t).sin_cos();
        re += w * c;
        im -= w * s;
    }
    Complex64::new(re, im)
}

/// Emission coefficient `f0k(t) = Σ_r t0r t_k^r e^{−iΩr t}` for field mode `k ≥ 1`.
pub fn f0k(spectrum: &ModeSpectrum, k: usize, t: f64) -> Result<Complex64> {
    if k == 0 {
        return Err(Error::InvalidParameter("field mode index must be ≥ 1".into()));
    }
    let phased = weighted_phases(spectrum, t);
    f0k_from_phases(spectrum, &phased, k)
}

fn weighted_phases(spectrum: &ModeSpectrum, t: f64) -> Vec<Complex64> {
    spectrum
        .frequencies()
        .iter()
        .zip(spectrum.weights())
        .map(|(&om, &w)| Complex64::from_polar(w, -om * t))
        .collect()
}

// t0r t_k^r = c_k (t0r)² / (Ω_r² − ω_k²)
fn f0k_from_phases(spectrum: &ModeSpectrum, phased: &[Complex64], k: usize) -> Result<Complex64> {
    let params = spectrum.params();
    let mut acc = Complex64::new(0.0, 0.0);
    for (&om, p) in spectrum.frequencies().iter().zip(phased).rev() {
        acc += p / mixing_denominator(params, om, k)?;
    }
    Ok(acc * params.coupling(k))
}

/// `(stay, swap)` amplitudes for atom A initially excited:
/// `stay = (e^{−iω0t} + f00)/2`, `swap = (f00 − e^{−iω0t})/2`.
pub fn stay_swap(f00: Complex64, omega0: f64, t: f64) -> (Complex64, Complex64) {
    let free = Complex64::from_polar(1.0, -omega0 * t);
    (0.5 * (free + f00), 0.5 * (f00 - free))
}

/// Probability amplitudes at time `t` for the initial dressed state with atom
/// A excited and no field quanta.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeSet {
    pub t: f64,
    /// Atom A still excited.
    pub stay: Complex64,
    /// Excitation transferred to atom B.
    pub swap: Complex64,
    /// One quantum in field mode `k = index + 1`, when requested.
    pub emit: Option<Vec<Complex64>>,
}

impl AmplitudeSet {
    pub fn atomic_probability(&self) -> f64 {
        self.stay.norm_sqr() + self.swap.norm_sqr()
    }

    /// `1 − |stay|² − |swap|² − Σ|emit_k|²`, if emission amplitudes are present.
    pub fn probability_defect(&self) -> Option<f64> {
        self.emit.as_ref().map(|emit| {
            let field = compensated_sum(emit.iter().rev().map(|e| e.norm_sqr()));
            1.0 - self.atomic_probability() - field
        })
    }
}

/// Stay/swap amplitudes and, optionally, the emission amplitudes
/// `f0k/√2` for `k = 1..=r_max`.
pub fn amplitudes(spectrum: &ModeSpectrum, t: f64, include_emit: bool) -> Result<AmplitudeSet> {
    let f = f00(spectrum, t);
    let (stay, swap) = stay_swap(f, spectrum.params().omega0, t);
    let emit = if include_emit {
        let phased = weighted_phases(spectrum, t);
        let scale = std::f64::consts::FRAC_1_SQRT_2;
        let emit = (1..=spectrum.r_max())
            .into_par_iter()
            .map(|k| f0k_from_phases(spectrum, &phased, k).map(|v| v * scale))
            .collect::<Result<Vec<_>>>()?;
        Some(emit)
    } else {
        None
    };
    Ok(AmplitudeSet { t, stay, swap, emit })
}

/// Re-seed the phase recurrence this often to bound drift.
const RESEED_INTERVAL: usize = 128;

impl ModeSpectrum {
    /// `f00` on a uniform grid, accumulating per-mode phases by recurrence.
    pub fn f00_on_grid(&self, grid: &TimeGrid) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); grid.count];
        for (&om, &w) in self.frequencies().iter().zip(self.weights()).rev() {
            let step = Complex64::from_polar(1.0, -om * grid.step);
            let mut phase = Complex64::new(0.0, 0.0);
            for (i, slot) in out.iter_mut().enumerate() {
                if i % RESEED_INTERVAL == 0 {
                    phase = Complex64::from_polar(w, -om * grid.at(i));
                } else {
                    phase *= step;
                }
                *slot += phase;
            }
        }
        out
    }
}

impl AmplitudeSource for ModeSpectrum {
    fn omega0(&self) -> f64 {
        self.params().omega0
    }

    fn f00(&self, t: f64) -> Result<Complex64> {
        Ok(f00(self, t))
    }

    fn f00_grid(&self, grid: &TimeGrid) -> Result<Vec<Complex64>> {
        Ok(self.f00_on_grid(grid))
    }
}
