//! Two-atom reduced state and its concurrence.
//!
//! The initial state is `√ξ |1,0⟩ + √(1−ξ) e^{iφ} |0,1⟩` with the field in its
//! dressed vacuum. In the one-excitation sector the atoms stay in a mixture of
//! `|0,0⟩` (excitation in the field) and a coherent superposition of `|1,0⟩`
//! and `|0,1⟩`, so the concurrence is `2|A B|`.

use std::f64::consts::TAU;

use nalgebra::{Matrix4, Schur};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{stay_swap, AmplitudeSource, TimeGrid};
use crate::error::{Error, Result};

/// Superposition parameters `(ξ, φ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InitialState {
    pub xi: f64,
    pub phi: f64,
}

impl InitialState {
    /// `phi` is reduced to `[0, 2π)`.
    pub fn new(xi: f64, phi: f64) -> Result<Self> {
        if !(xi.is_finite() && (0.0..=1.0).contains(&xi)) {
            return Err(Error::InvalidParameter(format!("xi must lie in [0, 1], got {xi}")));
        }
        if !phi.is_finite() {
            return Err(Error::InvalidParameter(format!("phi must be finite, got {phi}")));
        }
        Ok(Self {
            xi,
            phi: phi.rem_euclid(TAU),
        })
    }

    /// Coefficients of `|1,0⟩` and `|0,1⟩` at `t = 0`.
    fn coefficients(&self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.xi.sqrt(), 0.0),
            Complex64::from_polar((1.0 - self.xi).sqrt(), self.phi),
        )
    }
}

/// Amplitudes of `|1,0⟩` (`a`), `|0,1⟩` (`b`) and the total weight left in
/// the field, `1 − |a|² − |b|²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomPairAmplitudes {
    pub a: Complex64,
    pub b: Complex64,
    pub field_weight: f64,
}

impl AtomPairAmplitudes {
    pub fn new(a: Complex64, b: Complex64) -> Self {
        Self {
            a,
            b,
            field_weight: 1.0 - a.norm_sqr() - b.norm_sqr(),
        }
    }
}

pub fn atom_amplitudes(f00: Complex64, t: f64, omega0: f64, state: &InitialState) -> AtomPairAmplitudes {
    let (stay, swap) = stay_swap(f00, omega0, t);
    let (ca, cb) = state.coefficients();
    AtomPairAmplitudes::new(ca * stay + cb * swap, ca * swap + cb * stay)
}

/// `2|A B|`, clamped to `[0, 1]`.
pub fn concurrence(amps: &AtomPairAmplitudes) -> f64 {
    let raw = 2.0 * (amps.a * amps.b).norm();
    let clamped = raw.clamp(0.0, 1.0);
    if (raw - clamped).abs() > 1e-9 {
        log::debug!("concurrence {raw} clamped to {clamped}");
    }
    clamped
}

/// Two-atom density matrix in the basis `{|0,0⟩, |1,0⟩, |0,1⟩, |1,1⟩}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedDensityMatrix(Matrix4<Complex64>);

impl ReducedDensityMatrix {
    pub fn from_matrix(m: Matrix4<Complex64>) -> Self {
        Self(m)
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn hermiticity_defect(&self) -> f64 {
        (self.0 - self.0.adjoint()).norm()
    }

    /// Ascending real eigenvalues.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.0.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }
}

pub fn reduced_density(amps: &AtomPairAmplitudes) -> ReducedDensityMatrix {
    let (a, b) = (amps.a, amps.b);
    let zero = Complex64::new(0.0, 0.0);
    let re = |x: f64| Complex64::new(x, 0.0);
    #[rustfmt::skip]
    let m = Matrix4::new(
        re(amps.field_weight), zero, zero, zero,
        zero, re(a.norm_sqr()), a * b.conj(), zero,
        zero, a.conj() * b, re(b.norm_sqr()), zero,
        zero, zero, zero, zero,
    );
    ReducedDensityMatrix(m)
}

/// `σy ⊗ σy` in the `{|0,0⟩, |1,0⟩, |0,1⟩, |1,1⟩}` basis.
fn spin_flip() -> Matrix4<Complex64> {
    let o = Complex64::new(0.0, 0.0);
    let p = Complex64::new(1.0, 0.0);
    let m = Complex64::new(-1.0, 0.0);
    #[rustfmt::skip]
    let flip = Matrix4::new(
        o, o, o, m,
        o, o, p, o,
        o, p, o, o,
        m, o, o, o,
    );
    flip
}

/// Concurrence from the spin-flipped product `ρ (σy⊗σy) ρ* (σy⊗σy)`:
/// `max(0, λ1 − λ2 − λ3 − λ4)` over the square roots of its eigenvalues.
///
/// Eigenvalues within roundoff of zero, `64ε(‖R‖ + ‖ρ‖²)`, are taken as zero
/// before the square root.
pub fn concurrence_wootters(rho: &ReducedDensityMatrix) -> Result<f64> {
    let flip = spin_flip();
    let r = rho.0 * flip * rho.0.conjugate() * flip;
    let schur = Schur::try_new(r, f64::EPSILON, 10_000)
        .ok_or_else(|| Error::Eigensolver("Schur iteration did not converge".into()))?;
    let eigenvalues = schur
        .eigenvalues()
        .ok_or_else(|| Error::Eigensolver("Schur form is not triangular".into()))?;
    let cut = 64.0 * f64::EPSILON * (r.norm() + rho.0.norm_squared());
    let mut lambdas: Vec<f64> = eigenvalues
        .iter()
        .map(|mu| if mu.re > cut { mu.re.sqrt() } else { 0.0 })
        .collect();
    lambdas.sort_by(|x, y| y.total_cmp(x));
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

/// Concurrence at each time in `times`.
pub fn concurrence_series<S: AmplitudeSource + ?Sized>(
    source: &S,
    state: &InitialState,
    times: &[f64],
) -> Result<Vec<(f64, f64)>> {
    let f = source.f00_at(times)?;
    Ok(pair_with_concurrence(source.omega0(), state, times, &f))
}

/// Concurrence on a uniform grid.
pub fn concurrence_on_grid<S: AmplitudeSource + ?Sized>(
    source: &S,
    state: &InitialState,
    grid: &TimeGrid,
) -> Result<Vec<(f64, f64)>> {
    let f = source.f00_grid(grid)?;
    Ok(pair_with_concurrence(source.omega0(), state, &grid.times(), &f))
}

fn pair_with_concurrence(omega0: f64, state: &InitialState, times: &[f64], f: &[Complex64]) -> Vec<(f64, f64)> {
    times
        .par_iter()
        .zip(f)
        .map(|(&t, &f)| (t, concurrence(&atom_amplitudes(f, t, omega0, state))))
        .collect()
}

/// Which atom amplitude vanishes at a disentanglement time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VanishingAtom {
    A,
    B,
}

/// A located zero of the concurrence together with the residuals of the pair
/// of conditions that characterise it.
///
/// For `A(t) = 0` these are
/// `(2ξ−1)(|f00|²+1) + 2 Re(f00 e^{iω0t})` and, multiplied through by its
/// denominator, `e^{iφ}√(1−ξ)(f00 − e^{−iω0t}) + √ξ(f00 + e^{−iω0t})`.
/// For `B(t) = 0` the labels of the atoms are exchanged, which flips the sign
/// of the real-part term and swaps the roles of `f00 ± e^{−iω0t}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroCertificate {
    pub t: f64,
    pub concurrence: f64,
    pub vanishing: VanishingAtom,
    pub balance_residual: f64,
    pub phase_residual: f64,
}

impl ZeroCertificate {
    pub fn new(t: f64, f00: Complex64, omega0: f64, state: &InitialState) -> Self {
        let amps = atom_amplitudes(f00, t, omega0, state);
        let vanishing = if amps.a.norm() <= amps.b.norm() {
            VanishingAtom::A
        } else {
            VanishingAtom::B
        };
        let (balance_residual, phase_residual) = zero_residuals(f00, t, omega0, state, vanishing);
        Self {
            t,
            concurrence: concurrence(&amps),
            vanishing,
            balance_residual,
            phase_residual,
        }
    }

    pub fn max_residual(&self) -> f64 {
        self.balance_residual.abs().max(self.phase_residual)
    }
}

/// Residuals of the balance and phase conditions for a vanishing amplitude.
pub fn zero_residuals(f00: Complex64, t: f64, omega0: f64, state: &InitialState, which: VanishingAtom) -> (f64, f64) {
    let free = Complex64::from_polar(1.0, -omega0 * t);
    let xi = state.xi;
    let rotated = (f00 * free.conj()).re;
    let norms = f00.norm_sqr() + 1.0;
    let phase = Complex64::from_polar((1.0 - xi).sqrt(), state.phi);
    let (sign, toward, away) = match which {
        VanishingAtom::A => (1.0, f00 - free, f00 + free),
        VanishingAtom::B => (-1.0, f00 + free, f00 - free),
    };
    let balance = (2.0 * xi - 1.0) * norms + sign * 2.0 * rotated;
    let plus = (phase * toward - xi.sqrt() * away).norm();
    let minus = (phase * toward + xi.sqrt() * away).norm();
    (balance, plus.min(minus))
}

/// Scan density for [`find_disentanglement_times`].
pub const SCAN_POINTS_PER_PERIOD: usize = 2000;

const GOLDEN_ITER: usize = 200;

/// All times in `window` where the concurrence drops below `tol`.
///
/// `|A|` and `|B|` are sampled on a grid of [`SCAN_POINTS_PER_PERIOD`] points
/// per period `2π/ω0`; each grid minimum that could hide a zero is refined by
/// golden-section search and kept when `C < tol` there.
pub fn find_disentanglement_times<S: AmplitudeSource + ?Sized>(
    source: &S,
    state: &InitialState,
    window: (f64, f64),
    tol: f64,
) -> Result<Vec<ZeroCertificate>> {
    let (start, end) = window;
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tol must be positive, got {tol}")));
    }
    let omega0 = source.omega0();
    let step = TAU / omega0 / SCAN_POINTS_PER_PERIOD as f64;
    let grid = TimeGrid::inclusive(start, end, step)?;
    let f = source.f00_grid(&grid)?;
    let times = grid.times();
    let amps: Vec<AtomPairAmplitudes> = times
        .iter()
        .zip(&f)
        .map(|(&t, &f)| atom_amplitudes(f, t, omega0, state))
        .collect();
    let conc: Vec<f64> = amps.iter().map(concurrence).collect();

    let mut candidates = Vec::new();
    for which in [VanishingAtom::A, VanishingAtom::B] {
        let modulus: Vec<f64> = amps
            .iter()
            .map(|p| match which {
                VanishingAtom::A => p.a.norm(),
                VanishingAtom::B => p.b.norm(),
            })
            .collect();
        for i in local_minima(&modulus) {
            let lo = i.saturating_sub(1);
            let hi = (i + 1).min(times.len() - 1);
            let swing = (conc[lo] - conc[i]).abs().max((conc[hi] - conc[i]).abs());
            if conc[i] <= tol + 4.0 * swing {
                candidates.push((which, lo, i, hi));
            }
        }
    }

    let mut found: Vec<ZeroCertificate> = Vec::new();
    for (which, lo, i, hi) in candidates {
        let objective = |t: f64| -> Result<f64> {
            let amps = atom_amplitudes(source.f00(t)?, t, omega0, state);
            Ok(match which {
                VanishingAtom::A => amps.a.norm(),
                VanishingAtom::B => amps.b.norm(),
            })
        };
        let t_best = if lo == i || hi == i {
            // minimum at the window edge
            let inner = if lo == i { times[hi] } else { times[lo] };
            let edge = times[i];
            let t_in = golden_section(&objective, edge.min(inner), edge.max(inner))?;
            if objective(edge)? <= objective(t_in)? {
                edge
            } else {
                t_in
            }
        } else {
            golden_section(&objective, times[lo], times[hi])?
        };
        let cert = ZeroCertificate::new(t_best, source.f00(t_best)?, omega0, state);
        if cert.concurrence < tol {
            found.push(cert);
        }
    }

    found.sort_by(|l, r| l.t.total_cmp(&r.t));
    let mut merged: Vec<ZeroCertificate> = Vec::with_capacity(found.len());
    for cert in found {
        match merged.last_mut() {
            Some(prev) if (cert.t - prev.t).abs() < 2.0 * step => {
                if cert.concurrence < prev.concurrence {
                    *prev = cert;
                }
            }
            _ => merged.push(cert),
        }
    }
    Ok(merged)
}

fn local_minima(values: &[f64]) -> Vec<usize> {
    let n = values.len();
    (0..n)
        .filter(|&i| {
            let left = i == 0 || values[i] <= values[i - 1];
            let right = i + 1 == n || values[i] <= values[i + 1];
            left && right && n > 1
        })
        .collect()
}

fn golden_section<F>(f: &F, mut a: f64, mut b: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    for _ in 0..GOLDEN_ITER {
        if (b - a).abs() <= 1e-13 * a.abs().max(b.abs()).max(1.0) {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    Ok(if fc <= fd { c } else { d })
}
