//! Brute-force reference: diagonalise the coupled oscillator matrix with a
//! finite number of field modes.
//!
//! The potential-energy form is `ω0² + N η²` on the atomic diagonal, `ω_k²`
//! on the field diagonal and `c_k` between the atom and mode `k`. The diagonal
//! shift renormalises the atomic frequency exactly as in the continuum, so the
//! normal modes converge to the secular roots as `N` grows.

use faer::{Mat, Side};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::CavityParams;
use crate::spectrum::compensated_sum;

/// The symmetric matrix `M` with `H = ½ p·p + ½ q·M q`, indexed atom first.
#[derive(Debug, Clone)]
pub struct QuadraticForm {
    matrix: Mat<f64>,
}

impl QuadraticForm {
    pub fn new(params: &CavityParams, modes: usize) -> Result<Self> {
        params.validate()?;
        if modes < 2 {
            return Err(Error::InvalidParameter(format!(
                "at least two field modes are required, got {modes}"
            )));
        }
        let n = modes + 1;
        let mut matrix = Mat::<f64>::zeros(n, n);
        matrix[(0, 0)] = params.omega0 * params.omega0 + modes as f64 * params.eta_sq();
        for k in 1..=modes {
            let c = params.coupling(k);
            matrix[(k, k)] = params.bare_frequency(k).powi(2);
            matrix[(0, k)] = c;
            matrix[(k, 0)] = c;
        }
        Ok(Self { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.matrix[(i, j)]
    }
}

/// Normal modes of a [`QuadraticForm`].
#[derive(Debug, Clone)]
pub struct OracleEigensystem {
    frequencies: Vec<f64>,
    vectors: Mat<f64>,
}

impl OracleEigensystem {
    /// Ascending normal-mode frequencies `Ω_r`.
    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    /// Component `i` of normal mode `r`; the atomic component is `i = 0` and
    /// is non-negative for every mode.
    pub fn component(&self, i: usize, r: usize) -> f64 {
        self.vectors[(i, r)]
    }

    pub fn vector(&self, r: usize) -> Vec<f64> {
        self.vectors.col(r).iter().copied().collect()
    }

    /// Atomic weights `t0r²`.
    pub fn weights(&self) -> Vec<f64> {
        (0..self.frequencies.len())
            .map(|r| self.vectors[(0, r)].powi(2))
            .collect()
    }

    /// `Σ_r t0r² e^{−iΩ_r t}`.
    pub fn f00(&self, t: f64) -> Complex64 {
        let terms: Vec<Complex64> = self
            .frequencies
            .iter()
            .enumerate()
            .rev()
            .map(|(r, &omega)| Complex64::from_polar(self.vectors[(0, r)].powi(2), -omega * t))
            .collect();
        Complex64::new(
            compensated_sum(terms.iter().map(|z| z.re)),
            compensated_sum(terms.iter().map(|z| z.im)),
        )
    }
}

/// Diagonalises the `(modes + 1)`-dimensional problem.
pub fn finite_n_diagonalize(params: &CavityParams, modes: usize) -> Result<OracleEigensystem> {
    let form = QuadraticForm::new(params, modes)?;
    let evd = form
        .matrix
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Eigensolver(format!("{e:?}")))?;
    let values = evd.S();
    let n = form.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));

    let u = evd.U();
    let mut vectors = Mat::<f64>::zeros(n, n);
    let mut frequencies = Vec::with_capacity(n);
    for (r, &src) in order.iter().enumerate() {
        let value = values[src];
        if !(value > 0.0) {
            return Err(Error::NonPositiveEigenvalue { index: r, value });
        }
        frequencies.push(value.sqrt());
        let sign = if u[(0, src)] < 0.0 { -1.0 } else { 1.0 };
        for i in 0..n {
            vectors[(i, r)] = sign * u[(i, src)];
        }
    }
    Ok(OracleEigensystem { frequencies, vectors })
}

/// `f00(t)` from an `N`-mode diagonalisation.
pub fn f00_oracle(params: &CavityParams, modes: usize, t: f64) -> Result<Complex64> {
    Ok(finite_n_diagonalize(params, modes)?.f00(t))
}
