//! The `R → ∞` limit: survival coefficient as a Fourier integral over a
//! continuous spectral density, and the late-time concurrence.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::AmplitudeSource;
use crate::error::{ensure_positive, Error, Result};
use crate::quadrature::{integrate_panels, QuadratureFailure};

/// Settings for the free-space Fourier integral.
///
/// The half-line is cut into panels of width `π / max(t, t_min)` up to a cutoff
/// `X` chosen per `t` so that the analytic tail bound stays below `abs_tol/2`;
/// the panels share the other half of the budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub t_min: f64,
    pub max_depth: u32,
    pub max_panels: usize,
    pub max_segments: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-9,
            t_min: 1e-6,
            max_depth: 50,
            max_panels: 5_000_000,
            max_segments: 20_000_000,
        }
    }
}

/// How the region `x > cutoff` is accounted for at a given `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailPlan {
    pub cutoff: f64,
    pub panel_width: f64,
    /// Analytic estimate of `∫_X^∞`, added to the panel sum.
    pub correction: Complex64,
    /// Bound on the error left after the correction.
    pub bound: f64,
}

/// Spectral density `2g x² / ((x² − ω0²)² + π²g²x²)`.
fn density(omega0: f64, g: f64, x: f64) -> f64 {
    let x_sq = x * x;
    let detuning = x_sq - omega0 * omega0;
    let pg = PI * g;
    2.0 * g * x_sq / (detuning * detuning + pg * pg * x_sq)
}

fn density_slope(omega0: f64, g: f64, x: f64) -> f64 {
    let x_sq = x * x;
    let detuning = x_sq - omega0 * omega0;
    let pg_sq = (PI * g).powi(2);
    let d = detuning * detuning + pg_sq * x_sq;
    let d_prime = 4.0 * x * detuning + 2.0 * pg_sq * x;
    2.0 * g * (2.0 * x * d - x_sq * d_prime) / (d * d)
}

impl QuadratureConfig {
    fn validate(&self) -> Result<()> {
        ensure_positive("abs_tol", self.abs_tol)?;
        ensure_positive("t_min", self.t_min)
    }

    /// Cutoff and tail treatment for time `t ≥ 0`.
    ///
    /// At `t = 0` the tail is `2g/X` plus a remainder bounded through
    /// `|h − 2g/x²| ≤ 2g(|2ω0² − π²g²| + ω0⁴/X²)/(x⁴(1 − ω0²/X²)²)`. For `t > 0`
    /// one integration by parts gives `h(X)e^{−iXt}/(it)` with a remainder at
    /// most `2√2 |h'(X)|/t²`, valid because `h'` is monotone beyond `X`.
    pub fn tail_plan(&self, omega0: f64, g: f64, t: f64) -> TailPlan {
        let budget = 0.5 * self.abs_tol;
        let panel_width = PI / t.max(self.t_min);
        let floor = 4.0 * omega0.max(PI * g);

        let (mut cutoff, bound_at): (f64, Box<dyn Fn(f64) -> f64>) = if t == 0.0 {
            let spread = (2.0 * omega0 * omega0 - (PI * g).powi(2)).abs();
            let bound = move |x: f64| {
                let shrink = (1.0 - (omega0 / x).powi(2)).powi(2);
                2.0 * g * (spread + omega0.powi(4) / (x * x)) / (3.0 * x.powi(3) * shrink)
            };
            let guess = (2.0 * g * (spread + 1.0) / (3.0 * budget)).cbrt();
            (guess, Box::new(bound))
        } else {
            let bound = move |x: f64| 2.0 * SQRT_2 * density_slope(omega0, g, x).abs() / (t * t);
            let guess = (8.0 * SQRT_2 * g / (t * t * budget)).cbrt();
            (guess, Box::new(bound))
        };
        cutoff = cutoff.max(floor);
        while bound_at(cutoff) > budget {
            cutoff *= 1.25;
        }
        cutoff = (cutoff / panel_width).ceil() * panel_width;

        let correction = if t == 0.0 {
            Complex64::new(2.0 * g / cutoff, 0.0)
        } else {
            Complex64::from_polar(density(omega0, g, cutoff) / t, -cutoff * t - 0.5 * PI)
        };
        TailPlan {
            cutoff,
            panel_width,
            correction,
            bound: bound_at(cutoff),
        }
    }
}

/// `f00(t) = 2g ∫₀^∞ x² e^{−ixt} / ((x² − ω0²)² + π²g²x²) dx` to within
/// `cfg.abs_tol`. Negative times use `f00(−t) = conj f00(t)`.
pub fn f00_free(omega0: f64, g: f64, t: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
    ensure_positive("omega0", omega0)?;
    ensure_positive("g", g)?;
    cfg.validate()?;
    if !t.is_finite() {
        return Err(Error::InvalidParameter(format!("time must be finite, got {t}")));
    }
    if t < 0.0 {
        return f00_free(omega0, g, -t, cfg).map(|v| v.conj());
    }

    let plan = cfg.tail_plan(omega0, g, t);
    let panels = (plan.cutoff / plan.panel_width).round() as usize;
    if panels > cfg.max_panels {
        return Err(Error::QuadratureNotConverged {
            reason: format!("{panels} panels needed, limit is {}", cfg.max_panels),
        });
    }
    let breaks: Vec<f64> = (0..=panels).map(|i| i as f64 * plan.panel_width).collect();
    let integrand = |x: f64| Complex64::from_polar(density(omega0, g, x), -x * t);
    let (body, _) = integrate_panels(&integrand, &breaks, 0.5 * cfg.abs_tol, cfg.max_depth, cfg.max_segments).map_err(
        |failure| Error::QuadratureNotConverged {
            reason: match failure {
                QuadratureFailure::DepthExceeded { a, b, depth } => {
                    format!("refinement depth {depth} exceeded on [{a}, {b}]")
                }
                QuadratureFailure::SegmentLimit { segments, err } => {
                    format!("{segments} segments with error estimate {err:e}")
                }
            },
        },
    )?;
    Ok(body + plan.correction)
}

/// Late-time concurrence `1/2 − √(ξ(1−ξ)) cos φ`, clamped to `[0, 1]`.
pub fn asymptotic_concurrence(xi: f64, phi: f64) -> f64 {
    (0.5 - (xi * (1.0 - xi)).sqrt() * phi.cos()).clamp(0.0, 1.0)
}

/// Free-space source of `f00`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreeSpace {
    pub omega0: f64,
    pub g: f64,
    pub quadrature: QuadratureConfig,
}

impl FreeSpace {
    pub fn new(omega0: f64, g: f64) -> Result<Self> {
        ensure_positive("omega0", omega0)?;
        ensure_positive("g", g)?;
        Ok(Self {
            omega0,
            g,
            quadrature: QuadratureConfig::default(),
        })
    }
}

impl AmplitudeSource for FreeSpace {
    fn omega0(&self) -> f64 {
        self.omega0
    }

    fn f00(&self, t: f64) -> Result<Complex64> {
        f00_free(self.omega0, self.g, t, &self.quadrature)
    }
}
