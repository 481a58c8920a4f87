//! Closed-form reference for the free-space survival coefficient.
//!
//! The spectral density `2g x²/((x² − ω0²)² + π²g²x²)` is split into simple
//! fractions over its four complex poles, and each half-line Fourier integral
//! `∫₀^∞ e^{−ixt}/(x − z) dx` is written with the exponential integral `E1`.

#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Principal-branch `E1(w)`; on the negative real axis the upper side of the
/// cut is used.
pub fn exp_integral_e1(w: Complex64) -> Complex64 {
    let w = if w.im == 0.0 && w.re < 0.0 {
        Complex64::new(w.re, 0.0)
    } else {
        w
    };
    let use_series = w.norm() < 4.0 || (w.re < 0.0 && w.im.abs() < w.re.abs());
    if use_series {
        e1_series(w)
    } else {
        e1_continued_fraction(w)
    }
}

fn e1_series(w: Complex64) -> Complex64 {
    // E1(w) = −γ − ln w − Σ (−w)^n / (n·n!)
    let mut sum = Complex64::new(0.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    for n in 1..2000 {
        term *= -w / n as f64;
        let add = term / n as f64;
        sum += add;
        if add.norm() < 1e-17 * sum.norm() {
            break;
        }
    }
    -EULER_GAMMA - w.ln() - sum
}

fn e1_continued_fraction(w: Complex64) -> Complex64 {
    // modified Lentz on e^{w} E1(w) = 1/(w+1− 1/(w+3− 4/(w+5− …)))
    let tiny = 1e-300;
    let mut b = w + 1.0;
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..10_000 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let delta = c * d;
        h *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            break;
        }
    }
    h * (-w).exp()
}

/// `∫₀^∞ e^{−ixt}/(x − z) dx` for `t > 0` and non-real `z`.
fn half_line_fourier(z: Complex64, t: f64) -> Complex64 {
    let w = Complex64::new(0.0, -1.0) * z * t;
    let mut e1 = exp_integral_e1(w);
    if w.re < 0.0 && w.im < 0.0 {
        e1 -= Complex64::new(0.0, 2.0 * PI);
    }
    w.exp() * e1
}

/// The four poles of the spectral density.
pub fn density_poles(omega0: f64, g: f64) -> [Complex64; 4] {
    let root = Complex64::new(4.0 * omega0 * omega0 - (PI * g).powi(2), 0.0).sqrt();
    let damp = Complex64::new(0.0, PI * g);
    [
        (damp + root) / 2.0,
        (damp - root) / 2.0,
        (-damp + root) / 2.0,
        (-damp - root) / 2.0,
    ]
}

/// Free-space `f00(t)` from residues; `t ≥ 0`.
pub fn f00_free_exact(omega0: f64, g: f64, t: f64) -> Complex64 {
    let poles = density_poles(omega0, g);
    let residues: Vec<Complex64> = (0..4)
        .map(|j| {
            let mut denom = Complex64::new(1.0, 0.0);
            for k in 0..4 {
                if k != j {
                    denom *= poles[j] - poles[k];
                }
            }
            2.0 * g * poles[j] * poles[j] / denom
        })
        .collect();
    if t == 0.0 {
        // even integrand: half the full-line contour integral
        let upper: Complex64 = (0..4).filter(|&j| poles[j].im > 0.0).map(|j| residues[j]).sum();
        return 0.5 * Complex64::new(0.0, 2.0 * PI) * upper;
    }
    (0..4).map(|j| residues[j] * half_line_fourier(poles[j], t)).sum()
}
