//! Derivative-free bracketed root finding.

/// Outcome of a bracketed solve that did not produce a root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BracketError {
    /// `f(lo)` and `f(hi)` have the same sign.
    NoSignChange { f_lo: f64, f_hi: f64 },
    /// Iteration budget exhausted; carries the best estimate.
    MaxIterations { last: f64 },
}

/// Brent's method (bisection, secant and inverse quadratic interpolation).
///
/// Converges once the bracket half-width falls below
/// `2ε|x| + xtol(x)/2`, where `xtol` maps the current estimate to an
/// absolute tolerance so callers can ask for relative accuracy.
pub fn brent<F, T>(f: F, lo: f64, hi: f64, xtol: T, max_iter: usize) -> Result<f64, BracketError>
where
    F: Fn(f64) -> f64,
    T: Fn(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(BracketError::NoSignChange { f_lo: fa, f_hi: fb });
    }

    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;

    for _ in 0..max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }

        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol(b);
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }

        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * m * s, 1.0 - s)
            } else {
                let q = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0)),
                    (q - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }

        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
    }
    Err(BracketError::MaxIterations { last: b })
}
