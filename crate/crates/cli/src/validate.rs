use std::time::Instant;

use cavity_entanglement::spectrum::normal_mode_frequencies;
use cavity_entanglement::{
    amplitudes, concurrence_wootters, finite_n_diagonalize, reduced_density, AtomPairAmplitudes, CavityParams,
    ModeSpectrum, SpectrumConfig, TimeGrid,
};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::args::ValidateArgs;
use crate::error::CliError;

/// Transformation rows checked for orthonormality.
const CHECKED_ROWS: usize = 4;
const ORACLE_ROOTS: usize = 50;
const ORACLE_TOL: f64 = 1e-3;
const IDENTITY_TOL: f64 = 1e-10;
/// Finest truncation for the conservation check, whose cost is quadratic in
/// the number of modes.
const CONSERVATION_EPS: f64 = 1e-4;

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, pass: bool, detail: String) -> Self {
        Self { name, pass, detail }
    }
}

/// Runs every check; only a failure to build the inputs is an error.
pub fn run_checks(args: &ValidateArgs) -> Result<Vec<Check>, CliError> {
    let params = CavityParams::new(args.omega0, args.g, args.radius)?;
    if !(args.eps > 0.0 && args.eps <= crate::config::MAX_TRUNCATION_EPS) {
        return Err(CliError::Config(format!(
            "truncation eps must lie in (0, 1e-2], got {}",
            args.eps
        )));
    }
    if args.oracle_modes < ORACLE_ROOTS {
        return Err(CliError::Config(format!(
            "at least {ORACLE_ROOTS} oracle modes are required"
        )));
    }
    let cfg = SpectrumConfig {
        truncation_eps: args.eps,
        ..SpectrumConfig::default()
    };
    let spectrum = ModeSpectrum::build(params, &cfg)?;
    let mut checks = Vec::new();

    let sum = spectrum.weight_sum();
    checks.push(Check::new(
        "completeness",
        sum <= 1.0 + 1e-12 && 1.0 - sum <= args.eps,
        format!("1 - sum of weights = {:.3e} over {} modes", 1.0 - sum, spectrum.len()),
    ));

    let bare = params.mode_spacing();
    let interlaced = spectrum
        .frequencies()
        .iter()
        .enumerate()
        .all(|(r, &om)| om > r as f64 * bare && om < (r + 1) as f64 * bare);
    checks.push(Check::new(
        "interlacing",
        interlaced,
        format!("each root inside (r, r + 1)·π/R for {} roots", spectrum.len()),
    ));

    let conservation_eps = args.eps.max(CONSERVATION_EPS);
    let coarse;
    let matched = if conservation_eps > args.eps {
        coarse = ModeSpectrum::build(
            params,
            &SpectrumConfig {
                truncation_eps: conservation_eps,
                ..cfg
            },
        )?;
        &coarse
    } else {
        &spectrum
    };
    let mut worst_defect = 0.0f64;
    for t in [0.5, 1.0, 5.0] {
        let defect = amplitudes(matched, t, true)?.probability_defect().unwrap_or(f64::NAN);
        worst_defect = worst_defect.max(defect.abs());
    }
    checks.push(Check::new(
        "conservation",
        worst_defect <= conservation_eps,
        format!(
            "max |1 - P| at t = 0.5, 1, 5 over {} modes: {worst_defect:.3e}",
            matched.len()
        ),
    ));

    let mut rows = vec![spectrum.weights().iter().map(|w| w.sqrt()).collect::<Vec<f64>>()];
    for k in 1..CHECKED_ROWS {
        rows.push(spectrum.mixing_column(k)?);
    }
    let mut worst_ortho = 0.0f64;
    for i in 0..CHECKED_ROWS {
        for j in 0..=i {
            let dot: f64 = rows[i].iter().zip(&rows[j]).map(|(a, b)| a * b).sum();
            let expected = if i == j { 1.0 } else { 0.0 };
            worst_ortho = worst_ortho.max((dot - expected).abs());
        }
    }
    let ortho_tol = 2.0 * args.eps;
    checks.push(Check::new(
        "orthonormality",
        worst_ortho <= ortho_tol,
        format!("rows 0..{CHECKED_ROWS}: max deviation {worst_ortho:.3e} (tolerance {ortho_tol:.1e})"),
    ));

    let start = Instant::now();
    let sys = finite_n_diagonalize(&params, args.oracle_modes)?;
    log::info!("oracle with {} modes in {:.2?}", args.oracle_modes, start.elapsed());
    let roots = normal_mode_frequencies(&params, ORACLE_ROOTS - 1, spectrum.root_tol())?;
    let worst_root = roots
        .iter()
        .zip(sys.frequencies())
        .map(|(a, b)| ((a - b) / a).abs())
        .fold(0.0, f64::max);
    checks.push(Check::new(
        "oracle roots",
        worst_root < ORACLE_TOL,
        format!("first {ORACLE_ROOTS} roots, max relative deviation {worst_root:.3e}"),
    ));

    let grid = TimeGrid::inclusive(0.0, 10.0, 0.01)?;
    let worst_f00 = spectrum
        .f00_on_grid(&grid)
        .iter()
        .enumerate()
        .map(|(i, f)| (f - sys.f00(grid.at(i))).norm())
        .fold(0.0, f64::max);
    checks.push(Check::new(
        "oracle f00",
        worst_f00 < ORACLE_TOL,
        format!("max deviation on [0, 10]: {worst_f00:.3e}"),
    ));

    let mut rng = StdRng::seed_from_u64(args.seed);
    let mut worst_identity = 0.0f64;
    let mut drawn = 0;
    while drawn < args.samples {
        let v: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..=1.0));
        if v.iter().map(|x| x * x).sum::<f64>() > 1.0 {
            continue;
        }
        drawn += 1;
        let amps = AtomPairAmplitudes::new(Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3]));
        let wootters = concurrence_wootters(&reduced_density(&amps))?;
        worst_identity = worst_identity.max((2.0 * (amps.a * amps.b).norm() - wootters).abs());
    }
    checks.push(Check::new(
        "concurrence identity",
        worst_identity < IDENTITY_TOL,
        format!("{drawn} random pairs, max deviation {worst_identity:.3e}"),
    ));
    Ok(checks)
}
