//! Exit criteria. Each test prints one `PASS`/`FAIL` line, then asserts.
//!
//! Tests hold a shared lock so the wall-clock limits are not distorted by
//! other criteria running on the same cores.

mod common;

use std::f64::consts::PI;
use std::io::Write;
use std::sync::{Mutex, MutexGuard, OnceLock};
use std::time::{Duration, Instant};

use cavity_entanglement::spectrum::{normal_mode_frequencies, DEFAULT_ROOT_TOL};
use cavity_entanglement::{
    amplitudes, asymptotic_concurrence, atom_amplitudes, concurrence, concurrence_on_grid, concurrence_wootters,
    f00_free, find_disentanglement_times, finite_n_diagonalize, freespace::QuadratureConfig, reduced_density,
    AmplitudeSource, AtomPairAmplitudes, CavityParams, FreeSpace, InitialState, ModeSpectrum, OracleEigensystem,
    SpectrumConfig, TimeGrid,
};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const ORACLE_MODES: usize = 4000;

fn serial() -> MutexGuard<'static, ()> {
    static LOCK: Mutex<()> = Mutex::new(());
    LOCK.lock().unwrap_or_else(|poisoned| poisoned.into_inner())
}

fn report(id: &str, pass: bool, detail: String) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    // bypasses the test harness capture so every line reaches the log
    let mut out = std::io::stdout().lock();
    writeln!(out, "[acceptance] {id} {verdict}: {detail}").unwrap();
    out.flush().unwrap();
}

fn unit() -> CavityParams {
    CavityParams::new(1.0, 1.0, 1.0).unwrap()
}

fn with_eps(eps: f64) -> SpectrumConfig {
    SpectrumConfig {
        truncation_eps: eps,
        ..SpectrumConfig::default()
    }
}

/// Unit-parameter spectrum at ε = 1e-6 and the time taken to build it.
fn unit_spectrum() -> &'static (ModeSpectrum, Duration) {
    static CELL: OnceLock<(ModeSpectrum, Duration)> = OnceLock::new();
    CELL.get_or_init(|| {
        let start = Instant::now();
        let spectrum = ModeSpectrum::build(unit(), &with_eps(1e-6)).unwrap();
        (spectrum, start.elapsed())
    })
}

fn unit_oracle() -> &'static (OracleEigensystem, Duration) {
    static CELL: OnceLock<(OracleEigensystem, Duration)> = OnceLock::new();
    CELL.get_or_init(|| {
        let start = Instant::now();
        let sys = finite_n_diagonalize(&unit(), ORACLE_MODES).unwrap();
        (sys, start.elapsed())
    })
}

fn cavity(omega0: f64, g: f64, radius: f64) -> ModeSpectrum {
    ModeSpectrum::build(CavityParams::new(omega0, g, radius).unwrap(), &with_eps(1e-6)).unwrap()
}

fn series(source: &dyn AmplitudeSource, xi: f64, phi: f64, start: f64, end: f64, step: f64) -> Vec<(f64, f64)> {
    let state = InitialState::new(xi, phi).unwrap();
    let grid = TimeGrid::inclusive(start, end, step).unwrap();
    concurrence_on_grid(source, &state, &grid).unwrap()
}

fn mean_over(curve: &[(f64, f64)], ranges: &[(f64, f64)]) -> f64 {
    let picked: Vec<f64> = curve
        .iter()
        .filter(|(t, _)| ranges.iter().any(|&(a, b)| *t >= a - 1e-12 && *t <= b + 1e-12))
        .map(|&(_, c)| c)
        .collect();
    picked.iter().sum::<f64>() / picked.len() as f64
}

#[test]
fn a01_spectral_completeness() {
    let _guard = serial();
    let (spectrum, elapsed) = unit_spectrum();
    let sum = spectrum.weight_sum();
    let pass = (1.0 - 1e-6..=1.0).contains(&sum) && *elapsed < Duration::from_secs(5);
    report(
        "A1",
        pass,
        format!(
            "sum of weights = {sum:.12} over {} roots, 1 - sum = {:.3e}, built in {:.2?}",
            spectrum.len(),
            1.0 - sum,
            elapsed
        ),
    );
    assert!(pass);
}

#[test]
fn a02_roots_match_finite_mode_eigenfrequencies() {
    let _guard = serial();
    let start = Instant::now();
    let roots = normal_mode_frequencies(&unit(), 49, DEFAULT_ROOT_TOL).unwrap();
    let root_time = start.elapsed();
    let (sys, oracle_time) = unit_oracle();
    let worst = roots
        .iter()
        .zip(sys.frequencies())
        .map(|(root, oracle)| ((root - oracle) / root).abs())
        .fold(0.0, f64::max);
    let total = root_time + *oracle_time;
    let pass = roots.len() == 50 && worst < 1e-3 && total < Duration::from_secs(60);
    report(
        "A2",
        pass,
        format!("max relative deviation over 50 roots = {worst:.3e} (N = {ORACLE_MODES}), runtime {total:.2?}"),
    );
    assert!(pass);
}

#[test]
fn a03_survival_matches_finite_mode_oracle() {
    let _guard = serial();
    let (spectrum, _) = unit_spectrum();
    let (sys, _) = unit_oracle();
    let grid = TimeGrid::inclusive(0.0, 10.0, 0.01).unwrap();
    let fast = spectrum.f00_on_grid(&grid);
    let (worst, at) = fast
        .iter()
        .enumerate()
        .map(|(i, f)| ((f - sys.f00(grid.at(i))).norm(), grid.at(i)))
        .fold((0.0, 0.0), |acc, x| if x.0 > acc.0 { x } else { acc });
    let pass = grid.count == 1001 && worst < 1e-3;
    report("A3", pass, format!("max |f00 - oracle| = {worst:.3e} at t = {at:.2}"));
    assert!(pass);
}

#[test]
fn a04_probability_conservation() {
    let _guard = serial();
    let spectrum = ModeSpectrum::build(unit(), &with_eps(1e-4)).unwrap();
    let mut details = Vec::new();
    let mut pass = true;
    for t in [0.5, 1.0, 5.0] {
        let defect = amplitudes(&spectrum, t, true).unwrap().probability_defect().unwrap();
        pass &= defect.abs() < 1e-4;
        details.push(format!("t = {t}: {defect:.3e}"));
    }
    report(
        "A4",
        pass,
        format!(
            "defect with {} modes (tail {:.2e}): {}",
            spectrum.len(),
            spectrum.tail_mass(),
            details.join(", ")
        ),
    );
    assert!(pass);
}

#[test]
fn a05_closed_form_matches_spin_flip_concurrence() {
    let _guard = serial();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut worst = 0.0f64;
    let mut drawn = 0;
    while drawn < 10_000 {
        let v: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..=1.0));
        if v.iter().map(|x| x * x).sum::<f64>() > 1.0 {
            continue;
        }
        drawn += 1;
        let amps = AtomPairAmplitudes::new(Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3]));
        let closed = 2.0 * (amps.a * amps.b).norm();
        let wootters = concurrence_wootters(&reduced_density(&amps)).unwrap();
        worst = worst.max((closed - wootters).abs());
    }
    let pass = worst < 1e-10;
    report("A5", pass, format!("max deviation over {drawn} pairs = {worst:.3e}"));
    assert!(pass);
}

#[test]
fn a06_special_initial_states() {
    let _guard = serial();
    let (spectrum, _) = unit_spectrum();
    let grid = TimeGrid::inclusive(0.0, 10.0, 0.01).unwrap();
    let f = spectrum.f00_on_grid(&grid);
    let symmetric = InitialState::new(0.5, 0.0).unwrap();
    let antisymmetric = InitialState::new(0.5, PI).unwrap();
    let product = InitialState::new(0.0, 0.0).unwrap();
    let (mut e_sym, mut e_anti, mut e_prod) = (0.0f64, 0.0f64, 0.0f64);
    for (i, &f) in f.iter().enumerate() {
        let t = grid.at(i);
        let c = |s: &InitialState| concurrence(&atom_amplitudes(f, t, 1.0, s));
        e_sym = e_sym.max((c(&symmetric) - f.norm_sqr()).abs());
        e_anti = e_anti.max((c(&antisymmetric) - 1.0).abs());
        let expected = 0.5 * (f * f - Complex64::from_polar(1.0, -2.0 * t)).norm();
        e_prod = e_prod.max((c(&product) - expected).abs());
    }
    let pass = e_sym < 1e-12 && e_anti < 1e-12 && e_prod < 1e-12;
    report(
        "A6",
        pass,
        format!("symmetric {e_sym:.2e}, antisymmetric {e_anti:.2e}, product {e_prod:.2e}"),
    );
    assert!(pass);
}

#[test]
fn a07_free_space_normalisation_and_residue_oracle() {
    let _guard = serial();
    let cfg = QuadratureConfig::default();
    let mut norm_err = 0.0f64;
    let mut oracle_err = 0.0f64;
    for g in [0.01, 0.1, 1.0, 2.0] {
        norm_err = norm_err.max((f00_free(1.0, g, 0.0, &cfg).unwrap() - 1.0).norm());
        for t in [0.1, 1.0, 5.0] {
            let numeric = f00_free(1.0, g, t, &cfg).unwrap();
            oracle_err = oracle_err.max((numeric - common::f00_free_exact(1.0, g, t)).norm());
        }
    }
    let pass = norm_err < 1e-6 && oracle_err < 1e-6;
    report(
        "A7",
        pass,
        format!("max |f00(0) - 1| = {norm_err:.2e}, max |quadrature - residues| = {oracle_err:.2e}"),
    );
    assert!(pass);
}

#[test]
fn a08_late_time_asymptote() {
    let _guard = serial();
    let source = FreeSpace::new(1.0, 1.0).unwrap();
    let t = 30.0;
    let f = source.f00(t).unwrap();
    let mut worst = 0.0f64;
    for xi in [0.0, 0.25, 0.5, 0.75, 1.0] {
        for phi in [0.0, PI / 4.0, PI / 2.0, 3.0 * PI / 4.0, PI] {
            let c = concurrence(&atom_amplitudes(f, t, 1.0, &InitialState::new(xi, phi).unwrap()));
            worst = worst.max((c - asymptotic_concurrence(xi, phi)).abs());
        }
    }
    let pass = worst < 1e-3;
    report(
        "A8",
        pass,
        format!(
            "max deviation on 5x5 grid at t = 30: {worst:.3e} (|f00| = {:.2e})",
            f.norm()
        ),
    );
    assert!(pass);
}

/// Lag of the first autocorrelation peak after the initial decline.
fn autocorrelation_period(values: &[f64], step: f64) -> Option<f64> {
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let centred: Vec<f64> = values.iter().map(|v| v - mean).collect();
    let energy: f64 = centred.iter().map(|v| v * v).sum();
    let acf: Vec<f64> = (0..n / 2)
        .map(|lag| (0..n - lag).map(|i| centred[i] * centred[i + lag]).sum::<f64>() / energy)
        .collect();
    let trough = (1..acf.len() - 1).find(|&l| acf[l] <= acf[l - 1] && acf[l] < acf[l + 1])?;
    (trough + 1..acf.len() - 1)
        .find(|&l| acf[l] >= acf[l - 1] && acf[l] > acf[l + 1])
        .map(|l| l as f64 * step)
}

#[test]
fn a09_weak_coupling_periodicity_and_strong_coupling_plateau() {
    let _guard = serial();
    let step = 0.005;
    let weak = cavity(1.0, 0.01, 1.0);
    let curve = series(&weak, 0.0, 0.0, 1.0, 10.0, step);
    let values: Vec<f64> = curve.iter().map(|&(_, c)| c).collect();
    let max_c = values.iter().copied().fold(0.0, f64::max);
    let period = autocorrelation_period(&values, step);
    let periodic = period.is_some_and(|p| (p - PI).abs() <= 0.05 * PI);
    let weak_pass = periodic && max_c > 0.9;

    let strong = cavity(1.0, 2.0, 1.0);
    let curve = series(&strong, 0.0, 0.0, 5.0, 10.0, step);
    let mean = mean_over(&curve, &[(5.0, 10.0)]);
    let strong_pass = (mean - 0.5).abs() <= 0.1;

    let pass = weak_pass && strong_pass;
    let period_text = period.map_or("none".to_string(), |p| format!("{p:.4}"));
    report(
        "A9",
        pass,
        format!(
            "g = 0.01: autocorrelation period {period_text} (target {PI:.4} ± 5%), max C = {max_c:.4} (needs > 0.9); \
             g = 2: mean C on [5, 10] = {mean:.4} (needs 0.5 ± 0.1)"
        ),
    );
    assert!(pass);
}

#[test]
fn a10_round_trip_peak() {
    let _guard = serial();
    let (spectrum, _) = unit_spectrum();
    let curve = series(spectrum, 0.0, 0.0, 1.0, 3.0, 0.005);
    let peak = (1..curve.len() - 1)
        .filter(|&i| curve[i].0 >= 1.6 && curve[i].0 <= 2.4)
        .filter(|&i| curve[i].1 >= curve[i - 1].1 && curve[i].1 >= curve[i + 1].1)
        .map(|i| curve[i])
        .max_by(|a, b| a.1.total_cmp(&b.1));
    let base = mean_over(&curve, &[(1.0, 1.5), (2.5, 3.0)]);
    let pass = peak.is_some_and(|(_, c)| c > base);
    let peak_text = peak.map_or("none".to_string(), |(t, c)| format!("C = {c:.4} at t = {t:.3}"));
    report(
        "A10",
        pass,
        format!("local maximum in [1.6, 2.4]: {peak_text}; baseline mean {base:.4}"),
    );
    assert!(pass);
}

#[test]
fn a11_small_cavity_keeps_symmetric_state_entangled() {
    let _guard = serial();
    let spectrum = cavity(1.0, 1.0, 0.2);
    let curve = series(&spectrum, 0.5, 0.0, 0.0, 10.0, 0.005);
    let (t_min, c_min) = curve
        .iter()
        .copied()
        .fold((0.0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
    let pass = c_min > 0.7;
    report(
        "A11",
        pass,
        format!("min C on [0, 10] = {c_min:.4} at t = {t_min:.3} (needs > 0.7)"),
    );
    assert!(pass);
}

#[test]
fn a12_weak_coupling_exponential_decay() {
    let _guard = serial();
    let g = 0.01;
    let source = FreeSpace::new(1.0, g).unwrap();
    let samples = 200;
    let times: Vec<f64> = (0..samples)
        .map(|i| (0.2 + 2.8 * i as f64 / (samples - 1) as f64) / (PI * g))
        .collect();
    let probs: Vec<f64> = source.f00_at(&times).unwrap().iter().map(|f| f.norm_sqr()).collect();

    // least squares for ln P = ln a − Γ t
    let n = samples as f64;
    let logs: Vec<f64> = probs.iter().map(|p| p.ln()).collect();
    let mean_t = times.iter().sum::<f64>() / n;
    let mean_l = logs.iter().sum::<f64>() / n;
    let sxx: f64 = times.iter().map(|t| (t - mean_t).powi(2)).sum();
    let sxy: f64 = times.iter().zip(&logs).map(|(t, l)| (t - mean_t) * (l - mean_l)).sum();
    let gamma = -sxy / sxx;
    let amplitude = (mean_l + gamma * mean_t).exp();
    let residual = times
        .iter()
        .zip(&probs)
        .map(|(t, p)| {
            let fit = amplitude * (-gamma * t).exp();
            ((p - fit) / fit).abs()
        })
        .fold(0.0, f64::max);
    let pass = residual < 0.05;
    report(
        "A12",
        pass,
        format!(
            "fitted decay rate {gamma:.6} (pi*g = {:.6}), prefactor {amplitude:.4}, max relative residual {residual:.2e}",
            PI * g
        ),
    );
    assert!(pass);
}

#[test]
fn a13_disentanglement_certificates() {
    let _guard = serial();
    let source = FreeSpace::new(1.0, 1.0).unwrap();
    let (xi, phi) = (0.5, PI / 6.0);
    let state = InitialState::new(xi, phi).unwrap();
    let window = (0.0, 30.0);
    let zeros = find_disentanglement_times(&source, &state, window, 1e-6).unwrap();
    let worst = zeros.iter().map(|z| z.max_residual()).fold(0.0, f64::max);
    let pass = zeros.iter().all(|z| z.max_residual() < 1e-5);

    let curve = series(&source, xi, phi, window.0, window.1, 0.05);
    let (t_min, c_min) = curve
        .iter()
        .copied()
        .fold((0.0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
    report(
        "A13",
        pass,
        format!(
            "{} zero(s) in [0, 30], max residual {worst:.2e}; min C = {c_min:.4} at t = {t_min:.2} \
             (late-time value {:.4})",
            zeros.len(),
            asymptotic_concurrence(xi, phi)
        ),
    );
    assert!(pass);
}
